#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbtube/h3_transform.hpp"
#include "test_helpers.hpp"

using namespace sbtube;

namespace {

SpectralProfile zero_grid() {
  return SpectralProfile::from_grid({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0});
}

double heat_profile_value(double s, double xi) {
  return std::exp(-0.5 * s * (xi * xi + 1.0));
}

double heat_kernel_origin(double s) {
  return std::exp(-0.5 * s) / std::pow(2.0 * M_PI * s, 1.5);
}

}  // namespace

TEST_CASE("forward transform of the heat kernel") {
  QuadratureSpec quad;
  const double s = 0.35;
  const auto f = RadialFunction::heat_kernel(s);
  const auto p = h3::spherical_forward(f, quad, 8.0, 241);
  for (double xi = 0.0; xi <= 8.0 + 1e-9; xi += 8.0 / 240.0) {
    CHECK(p.value(xi) ==
          doctest::Approx(heat_profile_value(s, xi)).epsilon(1e-7));
  }
}

TEST_CASE("forward transform linearity and zero input") {
  QuadratureSpec quad;
  std::vector<double> rs, v0, v2x;
  for (int i = 0; i <= 400; ++i) {
    const double r = 12.0 * i / 400.0;
    rs.push_back(r);
    const double val = std::exp(-r * r);
    v0.push_back(val);
    v2x.push_back(2.0 * val);
  }
  const auto p1 = h3::spherical_forward(RadialFunction::from_grid(rs, v0),
                                        quad, 6.0, 121);
  const auto p2 = h3::spherical_forward(RadialFunction::from_grid(rs, v2x),
                                        quad, 6.0, 121);
  for (double xi : {0.0, 1.0, 3.0})
    CHECK(p2.value(xi) == doctest::Approx(2.0 * p1.value(xi)).epsilon(1e-9));

  std::vector<double> zeros(rs.size(), 0.0);
  const auto pz = h3::spherical_forward(RadialFunction::from_grid(rs, zeros),
                                        quad, 6.0, 61);
  for (double xi : {0.0, 2.0, 5.0}) CHECK(pz.value(xi) == 0.0);
}

TEST_CASE("inverse transform closed forms") {
  QuadratureSpec quad;
  const double t = 0.45;
  CHECK(h3::spherical_inverse(SpectralProfile::heat(t), 0.0, quad) ==
        doctest::Approx(heat_kernel_origin(t)).epsilon(1e-9));
  // against the full closed-form kernel at positive radius
  for (double r : {0.4, 1.3}) {
    const double want = std::exp(-0.5 * t) *
                        std::exp(-r * r / (2.0 * t)) /
                        (std::pow(2.0 * M_PI * t, 1.5) * sinhc(r));
    CHECK(h3::spherical_inverse(SpectralProfile::heat(t), r, quad) ==
          doctest::Approx(want).epsilon(1e-9));
  }
  CHECK(h3::spherical_inverse(zero_grid(), 0.7, quad) == 0.0);
}

TEST_CASE("physical round trip through both transforms") {
  QuadratureSpec quad;
  const double s = 0.4;
  const auto fwd =
      h3::spherical_forward(RadialFunction::heat_kernel(s), quad, 9.0, 301);
  for (double r : {0.0, 0.5, 1.5}) {
    const double want = RadialFunction::heat_kernel(s).value(r);
    CHECK(h3::spherical_inverse(fwd, r, quad) ==
          doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("round trip on effectively band-limited profiles") {
  QuadratureSpec quad;
  const double xi_max = 8.0;
  const int n_xi = 321;
  // Profiles of radial functions are smooth and even in xi, so every test
  // shape is a smooth function of xi^2 with fast decay inside the band.
  std::vector<std::vector<double>> shapes;
  std::vector<double> xs(n_xi);
  for (int i = 0; i < n_xi; ++i) xs[i] = xi_max * i / (n_xi - 1);
  auto add_shape = [&](auto&& fn) {
    std::vector<double> vs(n_xi);
    for (int i = 0; i < n_xi; ++i) vs[i] = fn(xs[i]);
    shapes.push_back(vs);
  };
  add_shape([](double x) { return std::exp(-x * x); });
  add_shape([](double x) { return x * x * std::exp(-x * x); });
  add_shape([](double x) {
    return std::exp(-(x * x - 1.0) * (x * x - 1.0));
  });
  add_shape([](double x) {
    return (1.0 + 0.5 * std::cos(x * x)) * std::exp(-0.8 * x * x);
  });
  add_shape([](double x) {
    return std::exp(-0.5 * x * x) / (1.0 + x * x * x * x);
  });
  // Tight tolerance while sampling: the forward weight r sinh(r) amplifies
  // any noise in the far tail of the sampled inverse.
  QuadratureSpec tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-11;
  for (const auto& vs : shapes) {
    const auto p = SpectralProfile::from_grid(xs, vs);
    // sample the inverse on a radial grid, then transform forward
    const double r_sup = 11.0;
    const int n_r = 441;
    std::vector<double> rg(n_r), fv(n_r);
    for (int i = 0; i < n_r; ++i) {
      rg[i] = r_sup * i / (n_r - 1);
      fv[i] = h3::spherical_inverse(p, rg[i], tight);
    }
    const auto back = h3::spherical_forward(RadialFunction::from_grid(rg, fv),
                                            tight, xi_max, n_xi);
    double worst = 0.0;
    for (int i = 0; i < n_xi; ++i)
      worst = std::max(worst, std::abs(back.value(xs[i]) - vs[i]));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("plancherel norm") {
  QuadratureSpec quad;
  CHECK(h3::plancherel_norm_sq(SpectralProfile::heat(0.5), quad) ==
        doctest::Approx(std::exp(-0.5) / std::pow(2.0 * M_PI, 1.5))
            .epsilon(1e-8));
  CHECK(h3::plancherel_norm_sq(zero_grid(), quad) == 0.0);
  // quadratic scaling
  std::vector<double> xs, vs, vs3;
  for (int i = 0; i <= 100; ++i) {
    xs.push_back(4.0 * i / 100.0);
    vs.push_back(std::exp(-xs.back() * xs.back()));
    vs3.push_back(3.0 * vs.back());
  }
  const double n1 =
      h3::plancherel_norm_sq(SpectralProfile::from_grid(xs, vs), quad);
  const double n3 =
      h3::plancherel_norm_sq(SpectralProfile::from_grid(xs, vs3), quad);
  CHECK(n3 == doctest::Approx(9.0 * n1).epsilon(1e-10));
  CHECK(n1 > 0.0);
}

TEST_CASE("heat evolution in spectral form") {
  const auto p = SpectralProfile::heat(0.3);
  const auto q = h3::heat_apply(p, 0.5);
  CHECK(q.kind() == SpectralProfile::Kind::Heat);
  CHECK(q.heat_time() == doctest::Approx(0.8));
  for (double xi : {0.0, 1.0, 4.0})
    CHECK(q.value(xi) ==
          doctest::Approx(heat_profile_value(0.8, xi)).epsilon(1e-14));
  // near-identity for tiny times
  const auto tiny = h3::heat_apply(SpectralProfile::band(2.0), 1e-8);
  for (double xi : {0.5, 1.9})
    CHECK(tiny.value(xi) == doctest::Approx(1.0).epsilon(1e-6));
  // contraction of the norm by at least e^{-t}
  QuadratureSpec quad;
  const double t = 0.37;
  const auto b = SpectralProfile::band(2.0);
  CHECK(h3::plancherel_norm_sq(h3::heat_apply(b, t), quad) <=
        std::exp(-t) * h3::plancherel_norm_sq(b, quad) * (1.0 + 1e-12));
  CHECK_THROWS_AS(h3::heat_apply(p, -0.1), DomainError);
}

TEST_CASE("holomorphic extension at radial crown points") {
  QuadratureSpec quad;
  const double t = 0.5;
  const auto pF = SpectralProfile::heat(t);
  CHECK(h3::eval_extension(pF, 0.0, quad) ==
        doctest::Approx(heat_kernel_origin(t)).epsilon(1e-8));
  for (double r : {0.6, 1.0}) {
    const double want = std::exp(-0.5 * t) * (r / std::sin(r)) *
                        std::exp(r * r / (2.0 * t)) /
                        std::pow(2.0 * M_PI * t, 1.5);
    CHECK(h3::eval_extension(pF, r, quad) ==
          doctest::Approx(want).epsilon(1e-6));
  }
  CHECK_THROWS_AS(h3::eval_extension(pF, M_PI, quad), DomainError);
  // divergence like 1/sin towards the singular radius: the sine-damped
  // value stabilizes while the raw value grows
  const double v1 = h3::eval_extension(pF, M_PI - 2e-3, quad);
  const double v2 = h3::eval_extension(pF, M_PI - 1e-3, quad);
  CHECK(v2 > 1.6 * v1);
  const double d1 = v1 * std::sin(M_PI - 2e-3);
  const double d2 = v2 * std::sin(M_PI - 1e-3);
  CHECK(d2 == doctest::Approx(d1).epsilon(1e-2));
  // profiles with no decay are rejected
  const auto growing = SpectralProfile::heat(0.3).evolved(-0.4);
  CHECK_THROWS_AS(h3::eval_extension(growing, 1.0, quad), GrowthError);
}

TEST_CASE("orbital integral") {
  QuadratureSpec quad;
  const double t = 0.5;
  const auto p = SpectralProfile::heat(0.3);
  // value at the origin reduces to the evolved squared norm
  const double at0 = h3::orbital_integral(p, t, 0.0, quad);
  const double norm =
      h3::plancherel_norm_sq(h3::heat_apply(p, t), quad);
  CHECK(at0 == doctest::Approx(norm).epsilon(1e-9));
  // monotone growth in the radius
  double prev = at0;
  for (double r = 0.3; r < M_PI - 0.05; r += 0.3) {
    const double v = h3::orbital_integral(p, t, r, quad);
    CHECK(v > prev);
    prev = v;
  }
  // sine-damped stability towards the boundary
  const double o1 = h3::orbital_integral(p, t, M_PI - 2e-3, quad);
  const double o2 = h3::orbital_integral(p, t, M_PI - 1e-3, quad);
  CHECK(o2 * std::sin(M_PI - 1e-3) ==
        doctest::Approx(o1 * std::sin(M_PI - 2e-3)).epsilon(1e-2));
  CHECK_THROWS_AS(h3::orbital_integral(p, t, M_PI, quad), DomainError);
}
