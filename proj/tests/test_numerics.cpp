#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sbtube/numerics.hpp"

using namespace sbtube;

TEST_CASE("adaptive quadrature on closed-form integrals") {
  QuadratureSpec q;
  CHECK(integrate([](double) { return 1.0; }, 0.0, 2.0, q) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, q) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Gaussian over a wide window.
  const double g = integrate(
      [](double x) { return std::exp(-x * x); }, -12.0, 12.0, q);
  CHECK(g == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  // A sharp peak forces refinement.
  const double peak = integrate(
      [](double x) { return 1.0 / (1e-6 + x * x); }, -1.0, 1.0, q);
  const double want = 2.0 / 1e-3 * std::atan(1.0 / 1e-3);
  CHECK(peak == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("quadrature failure on exhausted budget") {
  QuadratureSpec q;
  q.max_panels = 8;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-14;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (1e-9 + x * x); },
                            -1.0, 1.0, q),
                  QuadratureFailure);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  q.max_panels = 4;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = {};
  q.abs_tol = 0.0;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}

TEST_CASE("compensated summation recovers ill-conditioned sums") {
  CompensatedSum acc;
  acc.add(1.0);
  for (int i = 0; i < 10; ++i) acc.add(1e-17);
  acc.add(-1.0);
  CHECK(acc.value() == doctest::Approx(1e-16).epsilon(1e-3));
}

TEST_CASE("sinc and sinhc series joints") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinhc(0.0) == 1.0);
  // Values straddling the series threshold agree with the direct form.
  for (double x : {9.9e-5, 1.01e-4, 5e-5}) {
    CHECK(sinc(x) == doctest::Approx(std::sin(x) / x).epsilon(1e-15));
    CHECK(sinhc(x) == doctest::Approx(std::sinh(x) / x).epsilon(1e-15));
  }
  CHECK(sinc(M_PI / 2) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
  CHECK(sinhc(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
}

TEST_CASE("scaled hyperbolic helpers match the plain forms") {
  CHECK(sinhc_scaled(2.0, -1.0) ==
        doctest::Approx(sinhc(2.0) * std::exp(-1.0)).epsilon(1e-14));
  CHECK(sinhc_scaled(50.0, -40.0) ==
        doctest::Approx(std::sinh(50.0) / 50.0 * std::exp(-40.0))
            .epsilon(1e-13));
  CHECK(cosh_scaled(3.0, -2.0) ==
        doctest::Approx(std::cosh(3.0) * std::exp(-2.0)).epsilon(1e-14));
  // Arguments far beyond the overflow threshold of the plain forms.
  CHECK(std::isfinite(sinhc_scaled(900.0, -950.0)));
  CHECK(sinhc_scaled(900.0, -950.0) ==
        doctest::Approx(std::exp(-50.0) / 1800.0).epsilon(1e-12));
}

TEST_CASE("erfcx matches erfc on the overlap") {
  for (double x : {0.0, 0.5, 2.0, 5.5}) {
    CHECK(erfcx(x) ==
          doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-13));
  }
  // Asymptotic branch against the leading form.
  const double x = 9.0;
  CHECK(erfcx(x) * x * std::sqrt(M_PI) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("regularized incomplete gamma") {
  // P(1, x) = 1 - e^{-x}.
  for (double x : {0.1, 1.0, 4.0})
    CHECK(gamma_p(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-14));
  // P(1/2, x) = erf(sqrt x).
  for (double x : {0.25, 2.0, 9.0})
    CHECK(gamma_p(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-13));
  // P(3/2, x) via the chi closed form.
  for (double x : {0.5, 2.0, 7.0}) {
    const double X = std::sqrt(x);
    const double want = std::erf(X) - 2.0 * X / std::sqrt(M_PI) * std::exp(-x);
    CHECK(gamma_p(1.5, x) == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(gamma_p(2.5, 0.0) == 0.0);
  CHECK_THROWS_AS(gamma_p(-1.0, 1.0), DomainError);
}

TEST_CASE("cutoff rule scales with decay rate and tolerance") {
  const double a = xi_cutoff(0.5, 1e-10);
  const double b = xi_cutoff(0.25, 1e-10);
  CHECK(b > a);
  CHECK(xi_cutoff(0.5, 1e-10, 30.0) == 30.0);  // band edge dominates
}
