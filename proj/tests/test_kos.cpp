#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sbtube/h3_transform.hpp"
#include "sbtube/isometry.hpp"
#include "sbtube/kos.hpp"

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

}  // namespace

TEST_CASE("shift operator calibration on the rank-one preset") {
  const auto rs = preset_root_system("h3");
  const auto op = kos::calibrate_D(rs, 0.5);
  // unit root: the calibrated constant is -2
  CHECK(op.c_d == doctest::Approx(-2.0).epsilon(1e-12));
  // maps the continued spherical function to twice the hyperbolic cosine
  for (double y : {0.2, 0.9, 1.7}) {
    CHECK(op.apply_to_phi(v1(1.5), v1(y)) ==
          doctest::Approx(2.0 * std::cosh(1.5 * y)).epsilon(1e-12));
  }
  // value |W| at the origin
  CHECK(op.apply_to_phi(v1(1.5), v1(0.0)) == doctest::Approx(2.0));
  // linearity in the operand is inherited from the derivative: scale xi
  // dependence is nonlinear, so probe additivity through the residual
  for (double xi0 : {0.5, 1.5, 3.0})
    CHECK(kos::shift_residual(op, v1(xi0)) <= 1e-6);
}

TEST_CASE("shift operator calibration on rank two") {
  const auto rs = preset_root_system("a2");
  const auto op = kos::calibrate_D(rs, 0.5);
  for (double xi0 : {0.5, 1.5, 3.0}) {
    Eigen::VectorXd xi = v2(xi0, 0.4 * xi0);
    CHECK(kos::shift_residual(op, xi) <= 1e-6);
  }
}

TEST_CASE("gaussian derivative identity") {
  CHECK(kos::gaussian_derivative_identity_check(preset_root_system("h3"),
                                                0.5) <= 1e-12);
  CHECK(kos::gaussian_derivative_identity_check(preset_root_system("a1xa1"),
                                                0.5) <= 1e-5);
  CHECK(kos::gaussian_derivative_identity_check(preset_root_system("a2"),
                                                0.5) <= 1e-5);
}

TEST_CASE("gaussian derivative is alternating") {
  // the derivative polynomial changes sign under a root reflection
  const auto rs = preset_root_system("a2");
  const double t = 0.5;
  auto lhs = [&](const Eigen::VectorXd& y) {
    // exact product form verified against finite differences elsewhere
    double v = std::exp(-y.squaredNorm() / (4.0 * t));
    for (const auto& a : rs.positive_roots) v *= -a.dot(y) / (2.0 * t);
    return v;
  };
  const Eigen::MatrixXd s = reflection_matrix(rs.positive_roots[1]);
  for (const auto& y : {v2(0.7, 0.3), v2(-0.4, 1.1)})
    CHECK(lhs(s * y) == doctest::Approx(-lhs(y)).epsilon(1e-12));
}

TEST_CASE("shift-operator isometry matches the squared norm") {
  QuadratureSpec quad;
  const double t = 0.5;
  for (const auto& p :
       {SpectralProfile::heat(0.3), SpectralProfile::band(2.0)}) {
    const double k = kos::kos_isometry(p, t, quad);
    const double n = h3::plancherel_norm_sq(p, quad);
    CHECK(k == doctest::Approx(n).epsilon(1e-5));
  }
  // agreement with the tube-limit route
  const auto p = SpectralProfile::heat(0.3);
  const double lim = iso::gf_euclid(p, t, 6.0 * std::sqrt(t) + M_PI, quad);
  CHECK(kos::kos_isometry(p, t, quad) ==
        doctest::Approx(lim).epsilon(1e-5));
  CHECK(kos::kos_isometry(
            SpectralProfile::from_grid({0.0, 1.0}, {0.0, 0.0}), t, quad) ==
        0.0);
}

TEST_CASE("integration by parts closes the loop") {
  QuadratureSpec quad;
  const double t = 0.5;
  for (const auto& p :
       {SpectralProfile::heat(0.3), SpectralProfile::band(2.0)}) {
    const auto pair = kos::integration_by_parts_check(p, t, quad);
    CHECK(pair.first == doctest::Approx(pair.second).epsilon(1e-5));
  }
  const auto zero =
      kos::integration_by_parts_check(
          SpectralProfile::from_grid({0.0, 1.0}, {0.0, 0.0}), t, quad);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);
}
