#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "sbtube/special_functions.hpp"
#include "test_helpers.hpp"

using namespace sbtube;

namespace {

Eigen::VectorXd v1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

Eigen::VectorXd v2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

// Rank-space Laplacian of the invariant extension to the full space:
// flat rank Laplacian plus the multiplicity-2 polar correction.
double invariant_laplacian_fd(const RootSystem& rs,
                              const std::function<double(const Eigen::VectorXd&)>& f,
                              const Eigen::VectorXd& y, double h) {
  double lap = 0.0;
  const double fc = f(y);
  for (int i = 0; i < rs.rank; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(rs.rank);
    e[i] = h;
    lap += (f(y + e) - 2.0 * fc + f(y - e)) / (h * h);
  }
  for (const auto& a : rs.positive_roots) {
    const Eigen::VectorXd ah = a * (h / a.norm());
    const double da = a.norm() * (f(y + ah) - f(y - ah)) / (2.0 * h);
    lap += 2.0 * da / a.dot(y);
  }
  return lap;
}

}  // namespace

TEST_CASE("alternating exponential sum") {
  const auto a1 = preset_root_system("a1");
  const auto w1 = build_weyl_group(a1);
  for (double s : {0.5, 1.5}) {
    for (double y : {0.3, 1.1}) {
      CHECK(weyl_sum_A(a1, w1, v1(s), v1(y)) ==
            doctest::Approx(-2.0 * std::sinh(s * y)).epsilon(1e-14));
    }
  }
  const auto a2 = preset_root_system("a2");
  const auto w2 = build_weyl_group(a2);
  CHECK(weyl_sum_A(a2, w2, v2(0.0, 0.0), v2(0.7, 0.2)) ==
        doctest::Approx(0.0).epsilon(1e-15));
  std::mt19937 rng(5u);
  std::uniform_real_distribution<double> uni(-1.2, 1.2);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd xi = v2(uni(rng), uni(rng));
    const Eigen::VectorXd y = v2(uni(rng), uni(rng));
    CHECK(weyl_sum_A(a2, w2, xi, y) ==
          doctest::Approx(weyl_sum_A(a2, w2, y, xi)).epsilon(1e-10));
    // antisymmetry in the first slot
    const std::size_t k = i % w2.size();
    CHECK(weyl_sum_A(a2, w2, w2.elements[k] * xi, y) ==
          doctest::Approx(w2.signs[k] * weyl_sum_A(a2, w2, xi, y))
              .epsilon(1e-10));
  }
}

TEST_CASE("entire spherical quotient: closed forms and normalization") {
  const auto h3 = preset_root_system("h3");
  CHECK(psi_entire(h3, v1(2.0), v1(0.5)) ==
        doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(psi_entire(h3, v1(3.7), v1(0.0)) == doctest::Approx(1.0));
  CHECK(psi_entire(h3, v1(1.0), v1(M_PI)) ==
        doctest::Approx(std::sinh(M_PI) / M_PI).epsilon(1e-14));
  const auto rs11 = preset_root_system("a1xa1");
  CHECK(psi_entire(rs11, v2(1.0, 2.0), v2(0.5, 0.25)) ==
        doctest::Approx(sinhc(0.5) * sinhc(0.5)).epsilon(1e-13));
}

TEST_CASE("entire spherical quotient: invariance, symmetry, walls") {
  const auto a2 = preset_root_system("a2");
  const auto w = build_weyl_group(a2);
  std::mt19937 rng(17u);
  std::uniform_real_distribution<double> uni(0.2, 1.5);
  // Stay in the direct-quotient region; wall behaviour is probed separately.
  auto draw = [&]() {
    while (true) {
      const Eigen::VectorXd v = v2(uni(rng), uni(rng));
      if (std::abs(pi_poly(a2, v)) >= 0.05) return v;
    }
  };
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd xi = draw();
    const Eigen::VectorXd y = draw();
    const double base = psi_entire(a2, w, xi, y);
    CHECK(psi_entire(a2, w, y, xi) == doctest::Approx(base).epsilon(1e-10));
    const std::size_t k = i % w.size();
    CHECK(psi_entire(a2, w, w.elements[k] * xi, y) ==
          doctest::Approx(base).epsilon(1e-10));
    CHECK(psi_entire(a2, w, xi, w.elements[k] * y) ==
          doctest::Approx(base).epsilon(1e-10));
  }
  // Exactly on a wall the quotient stays finite and continuous: approach
  // the wall along a line and compare with the on-wall value.
  const Eigen::VectorXd xi = v2(0.9, 0.4);
  const Eigen::VectorXd on_wall = v2(0.0, 1.1);  // orthogonal to (1,0)
  const double at_wall = psi_entire(a2, w, xi, on_wall);
  CHECK(std::isfinite(at_wall));
  for (double eps : {1e-5, 1e-7}) {
    const double near = psi_entire(a2, w, xi, v2(eps, 1.1));
    CHECK(near == doctest::Approx(at_wall).epsilon(1e-6));
  }
  // Richardson extrapolation of the plain quotient as an independent oracle.
  auto quotient = [&](double eps) {
    const Eigen::VectorXd y = v2(eps, 1.1);
    return weyl_sum_A(a2, w, xi, y) / (pi_poly(a2, xi) * pi_poly(a2, y));
  };
  const double q1 = quotient(0.20);
  const double q2 = quotient(0.10);
  const double q4 = quotient(0.05);
  // eliminate the even eps^2 error terms
  const double extrap = (16.0 * q4 - 8.0 * q2 + q1) / 9.0;
  // the normalization constant cancels in the ratio
  const double ratio_impl = at_wall / psi_entire(a2, w, xi, v2(0.20, 1.1));
  const double ratio_oracle = extrap / q1;
  CHECK(ratio_impl == doctest::Approx(ratio_oracle).epsilon(1e-5));
}

TEST_CASE("entire quotient is a laplacian eigenfunction") {
  const auto h3 = preset_root_system("h3");
  const auto wh = build_weyl_group(h3);
  const auto a2 = preset_root_system("a2");
  const auto wa = build_weyl_group(a2);
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> uni(0.25, 1.3);
  const double h = 1e-3;
  for (int i = 0; i < 20; ++i) {
    {
      const double xi = uni(rng);
      const Eigen::VectorXd y = v1(uni(rng));
      auto f = [&](const Eigen::VectorXd& v) {
        return psi_entire(h3, wh, v1(xi), v);
      };
      const double lap = invariant_laplacian_fd(h3, f, y, h);
      CHECK(lap ==
            doctest::Approx(xi * xi * f(y)).epsilon(1e-4));
    }
    {
      const Eigen::VectorXd xi = v2(uni(rng), uni(rng));
      Eigen::VectorXd y = v2(uni(rng), uni(rng));
      bool near_wall = false;
      for (const auto& a : a2.positive_roots)
        if (std::abs(a.dot(y)) < 0.15) near_wall = true;
      if (near_wall) continue;
      auto f = [&](const Eigen::VectorXd& v) {
        return psi_entire(a2, wa, xi, v);
      };
      const double lap = invariant_laplacian_fd(a2, f, y, h);
      CHECK(lap == doctest::Approx(xi.squaredNorm() * f(y)).epsilon(1e-4));
    }
  }
}

TEST_CASE("continued spherical function") {
  const auto h3 = preset_root_system("h3");
  CHECK(phi_continued(h3, v1(1.0), v1(M_PI / 2)) ==
        doctest::Approx(std::sinh(M_PI / 2)).epsilon(1e-14));
  CHECK(phi_continued(h3, v1(2.2), v1(0.0)) == doctest::Approx(1.0));
  // blow-up near the singular radius
  const double r = M_PI - 1e-3;
  CHECK(phi_continued(h3, v1(1.0), v1(r)) >
        0.9 * std::sinh(r) / std::sin(r));
  CHECK_THROWS_AS(phi_continued(h3, v1(1.0), v1(M_PI)), SingularPoint);

  // compatibility with the entire quotient away from singularities
  const auto a2 = preset_root_system("a2");
  std::mt19937 rng(29u);
  std::uniform_real_distribution<double> uni(0.2, 1.2);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd x = v2(uni(rng), uni(rng));
    const Eigen::VectorXd y = v2(uni(rng), uni(rng));
    if (std::abs(pi_poly(a2, x) * pi_poly(a2, y)) < 5e-3) continue;
    const double jc = jc_half(a2, y);
    CHECK(phi_continued(a2, x, y) * jc ==
          doctest::Approx(psi_entire(a2, x, y)).epsilon(1e-10));
  }
}

TEST_CASE("flat spherical sum") {
  const auto h3 = preset_root_system("h3");
  const auto wh = build_weyl_group(h3);
  CHECK(psi_euclidean(h3, wh, v1(1.2), v1(0.7)) ==
        doctest::Approx(2.0 * std::cosh(1.2 * 0.7)).epsilon(1e-14));
  CHECK(psi_euclidean(h3, wh, v1(2.0), v1(0.0)) == doctest::Approx(2.0));
  const auto a2 = preset_root_system("a2");
  const auto wa = build_weyl_group(a2);
  CHECK(psi_euclidean(a2, wa, v2(0.0, 0.0), v2(0.4, 0.9)) ==
        doctest::Approx(6.0));
  // Weyl invariance
  const Eigen::VectorXd xi = v2(0.8, 0.3), y = v2(0.5, 0.7);
  for (std::size_t k = 0; k < wa.size(); ++k)
    CHECK(psi_euclidean(a2, wa, wa.elements[k] * xi, y) ==
          doctest::Approx(psi_euclidean(a2, wa, xi, y)).epsilon(1e-12));
}

TEST_CASE("heat kernel densities and masses") {
  CHECK(heat_gaussian(3, 0.5, 0.0) ==
        doctest::Approx(std::pow(2.0 * M_PI, -1.5)).epsilon(1e-14));
  // unit mass in one dimension
  const double m1 = testq::gl(
      [](double y) { return heat_gaussian(1, 0.7, std::abs(y)); }, -14.0,
      14.0);
  CHECK(m1 == doctest::Approx(1.0).epsilon(1e-12));

  const auto h3 = preset_root_system("h3");
  // radial mass oracles in closed form
  {
    const double t = 0.5;
    const double oracle = testq::gl(
        [&](double r) { return r * std::sin(r) * std::exp(-r * r / (4 * t)); },
        0.0, 12.0);
    CHECK(oracle == doctest::Approx(2.0 * t * std::sqrt(M_PI * t) *
                                    std::exp(-t))
                        .epsilon(1e-12));
    const double mass = testq::gl(
        [&](double r) {
          return nu_c_unwrapped(h3, 2.0 * t, v1(r)) * jc_half(h3, v1(r)) *
                 jc_half(h3, v1(r)) * polar_density(h3, v1(r));
        },
        0.0, 12.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  }
  {
    const double t = 0.7;
    const double oracle = testq::gl(
        [&](double r) {
          return r * std::sinh(r) * std::exp(-r * r / (2 * t));
        },
        0.0, 14.0);
    CHECK(oracle == doctest::Approx(0.5 * t * std::sqrt(2.0 * M_PI * t) *
                                    std::exp(0.5 * t))
                        .epsilon(1e-12));
    const double mass = testq::gl(
        [&](double r) {
          return nu_nc(h3, t, v1(r)) * jnc_half(h3, v1(r)) *
                 jnc_half(h3, v1(r)) * polar_density(h3, v1(r));
        },
        0.0, 14.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  }
  // alpha density equals the unwrapped kernel times the full jacobian
  for (double r : {0.3, 1.0, 2.2})
    CHECK(alpha_density(h3, 0.4, v1(r)) ==
          doctest::Approx(nu_c_unwrapped(h3, 0.8, v1(r)) * jc_half(h3, v1(r)) *
                          jc_half(h3, v1(r)))
              .epsilon(1e-12));
}

TEST_CASE("gaussian ball integral") {
  CHECK(gaussian_ball_I(3, 0.5, 1.0, 0.0) == 0.0);
  const double t = 0.25;
  // saturation
  for (double s : {0.0, 1.0, 3.0}) {
    const double full = gaussian_ball_I(3, t, s, 40.0 * std::sqrt(t));
    CHECK(full == doctest::Approx(std::exp(t * s * s)).epsilon(1e-10));
  }
  // chi-ball closed form at s = 0
  CHECK(gaussian_ball_I(3, 0.25, 0.0, 2.0) ==
        doctest::Approx(std::erf(2.0) -
                        4.0 / std::sqrt(M_PI) * std::exp(-4.0))
            .epsilon(1e-13));
  // monotone nondecreasing in b, bounded by the limit
  for (double s : {0.5, 2.0}) {
    double prev = 0.0;
    for (double b = 0.0; b <= 6.0; b += 0.25) {
      const double v = gaussian_ball_I(3, t, s, b);
      CHECK(v >= prev - 1e-13 * (1.0 + v));
      CHECK(v <= std::exp(t * s * s) * (1.0 + 1e-12));
      prev = v;
    }
  }
  // d = 1 closed form against direct quadrature
  for (double s : {0.0, 0.8, 2.5}) {
    const double b = 1.7;
    const double direct = testq::gl(
        [&](double y) {
          return std::exp(s * y) * heat_gaussian(1, t, std::abs(y));
        },
        -b, b);
    CHECK(gaussian_ball_I(1, t, s, b) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
  // d = 3 closed form against the radial quadrature route
  for (double s : {0.3, 1.7}) {
    const double b = 2.1;
    const double radial = testq::gl(
        [&](double r) {
          return sinhc(s * r) * heat_gaussian(3, t, r) * 4.0 * M_PI * r * r;
        },
        0.0, b);
    CHECK(gaussian_ball_I(3, t, s, b) ==
          doctest::Approx(radial).epsilon(1e-12));
  }
  // generic-dimension series against 2d polar quadrature
  for (double s : {0.4, 1.2}) {
    const double b = 1.9;
    const double polar = testq::gl(
        [&](double th) {
          return testq::gl(
              [&](double r) {
                return std::exp(s * r * std::cos(th)) *
                       heat_gaussian(2, t, r) * r;
              },
              0.0, b);
        },
        0.0, 2.0 * M_PI);
    CHECK(gaussian_ball_I(2, t, s, b) == doctest::Approx(polar).epsilon(1e-9));
  }
  // deep cancellation regime stays positive and finite
  const double small = gaussian_ball_I(3, 0.5, 20.0, 0.5);
  CHECK(small > 0.0);
  CHECK(std::isfinite(small));
}

TEST_CASE("spectral multiplier") {
  const auto h3 = preset_root_system("h3");
  CHECK(beta_R(h3, 0.25, 1.0, 1.0) ==
        doctest::Approx(std::erf(2.0) -
                        4.0 / std::sqrt(M_PI) * std::exp(-4.0))
            .epsilon(1e-13));
  CHECK(beta_R(h3, 0.5, 3.7, 40.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta_R(h3, 0.5, 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(beta_R(h3, 0.5, 0.5, 1.0), DomainError);
}

TEST_CASE("sphere moments") {
  CHECK(sphere_moment(3, 1) == 0.0);
  CHECK(sphere_moment(5, 7) == 0.0);
  CHECK(sphere_moment(3, 0) == 1.0);
  CHECK(sphere_moment(3, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // brute-force spherical average oracle on S^2
  const double brute = testq::gl(
                           [&](double c) { return c * c; }, -1.0, 1.0) /
                       2.0;
  CHECK(sphere_moment(3, 2) == doctest::Approx(brute).epsilon(1e-12));
  // moment series reproduces the radial average of the exponential
  for (double x : {0.5, 2.0, 5.0}) {
    CHECK(radial_average_exp(3, x * x) ==
          doctest::Approx(sinhc(x)).epsilon(1e-10));
  }
  // one-dimensional average is cosh
  CHECK(radial_average_exp(1, 1.21) ==
        doctest::Approx(std::cosh(1.1)).epsilon(1e-12));
}

TEST_CASE("radialization identity") {
  QuadratureSpec quad;
  // constant eigenfunction: both sides equal the ball mass
  {
    auto one = [](const Eigen::VectorXd&) { return 1.0; };
    auto beta = [](double r) { return heat_gaussian(1, 0.3, r); };
    const auto pr = euclid_radialization_check(1, 0.0, one, beta, 0.8, quad);
    CHECK(pr.first == doctest::Approx(pr.second).epsilon(1e-10));
  }
  // the exponential itself, sigma = 4, d = 2
  {
    auto expf = [](const Eigen::VectorXd& y) { return std::exp(2.0 * y[0]); };
    auto beta = [](double r) { return std::exp(-r * r); };
    const auto pr = euclid_radialization_check(2, 4.0, expf, beta, 0.7, quad);
    CHECK(pr.first == doctest::Approx(pr.second).epsilon(1e-9));
  }
  // non-eigenfunction rejected
  {
    auto bad = [](const Eigen::VectorXd& y) {
      return std::exp(-y.squaredNorm());
    };
    auto beta = [](double r) { return std::exp(-r * r); };
    CHECK_THROWS_AS(euclid_radialization_check(2, 1.0, bad, beta, 0.7, quad),
                    NotAnEigenfunction);
  }
}
