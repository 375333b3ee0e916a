#include "sbtube/kos.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "sbtube/h3_transform.hpp"
#include "sbtube/isometry.hpp"
#include "sbtube/numerics.hpp"

namespace sbtube::kos {

namespace {

constexpr double kCP = 1.0 / (2.0 * M_PI * M_PI);

// Operand of the derivative part of D: prod sin<a,Y> * phi_xi(e^{iY})
// equals pi(Y) * Psi_xi(Y), entire in Y.
double sine_times_phi(const RootSystem& rs, const WeylGroup& w,
                      const Eigen::VectorXd& xi, const Eigen::VectorXd& Y) {
  return pi_poly(rs, Y) * psi_entire(rs, w, xi, Y);
}

// Nested directional derivatives prod D_alpha by fourth-order central
// differences; each step moves along the (unnormalized) root.
template <class F>
double nested_directional(const RootSystem& rs, const F& f,
                          const Eigen::VectorXd& Y, double h, std::size_t k) {
  if (k == rs.positive_roots.size()) return f(Y);
  const Eigen::VectorXd& a = rs.positive_roots[k];
  auto g = [&](double tau) {
    return nested_directional(rs, f, Y + tau * a, h, k + 1);
  };
  return (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h);
}

double ymax_for(const SpectralProfile& p, double t, double abs_tol) {
  const double L = std::max(1.0, std::log(1.0 / abs_tol));
  if (p.compact_support()) {
    const double a = p.support_sup();
    return 2.0 * t * a + std::sqrt(4.0 * t * L) + 6.0 * std::sqrt(t);
  }
  const double s = p.total_heat();
  return std::sqrt(4.0 * t * (s + t) * L / s) + 6.0 * std::sqrt(t);
}

double log_sq_weight(const SpectralProfile& p, double t, double xi) {
  if (xi <= 0.0) return -std::numeric_limits<double>::infinity();
  const double base = -t * (xi * xi + 1.0) + std::log(kCP * xi * xi);
  if (p.kind() == SpectralProfile::Kind::Heat)
    return base - p.total_heat() * (xi * xi + 1.0);
  const double v = p.value(xi);
  if (v <= 0.0) return -std::numeric_limits<double>::infinity();
  return base + 2.0 * std::log(v);
}

}  // namespace

double ShiftOperator::apply_to_phi(const Eigen::VectorXd& xi,
                                   const Eigen::VectorXd& Y) const {
  const int p = static_cast<int>(rs.positive_roots.size());
  const double parity = (p % 2 == 0) ? 1.0 : -1.0;
  if (rs.rank == 1) {
    // Operand g(Y) = <a,Y> sinhc(u) with u = <a,xi><a,Y>/|a|^2, so
    // D_a g = |a|^2 d/du [u sinhc(u)] = |a|^2 cosh(u).
    const auto& a = rs.positive_roots[0];
    const double u = a.dot(xi) * a.dot(Y) / a.squaredNorm();
    return c_d * parity * a.squaredNorm() * std::cosh(u);
  }
  auto f = [&](const Eigen::VectorXd& y) {
    return sine_times_phi(rs, weyl, xi, y);
  };
  return c_d * parity * nested_directional(rs, f, Y, fd_step, 0);
}

namespace {

// Probe points away from the Weyl walls, where the direct quotient form of
// the spherical function is fully accurate.
std::vector<Eigen::VectorXd> wall_free_probes(const RootSystem& rs) {
  std::vector<Eigen::VectorXd> probes;
  std::mt19937 rng(7151u);
  std::uniform_real_distribution<double> uni(0.15, 1.4);
  while (probes.size() < 20) {
    Eigen::VectorXd y(rs.rank);
    for (int j = 0; j < rs.rank; ++j) y[j] = uni(rng);
    bool near_wall = false;
    for (const auto& a : rs.positive_roots)
      if (std::abs(a.dot(y)) < 0.08) near_wall = true;
    if (!near_wall) probes.push_back(y);
  }
  return probes;
}

}  // namespace

double shift_residual(const ShiftOperator& op, const Eigen::VectorXd& xi) {
  double worst = 0.0;
  for (const auto& y : wall_free_probes(op.rs)) {
    const double got = op.apply_to_phi(xi, y);
    const double want = psi_euclidean(op.rs, op.weyl, xi, y);
    worst = std::max(worst, std::abs(got - want) / (1.0 + std::abs(want)));
  }
  return worst;
}

ShiftOperator calibrate_D(const RootSystem& rs, double t) {
  (void)t;
  ShiftOperator op;
  op.rs = rs;
  op.weyl = build_weyl_group(rs);
  op.c_d = 1.0;

  Eigen::VectorXd xi0 = Eigen::VectorXd::Zero(rs.rank);
  xi0[0] = 1.5;
  if (rs.rank == 2) xi0[1] = 0.4;

  const auto probes = wall_free_probes(rs);
  const double raw0 = op.apply_to_phi(xi0, probes[0]);
  const double target0 = psi_euclidean(rs, op.weyl, xi0, probes[0]);
  if (raw0 == 0.0) throw CalibrationFailure("calibrate_D: degenerate probe");
  op.c_d = target0 / raw0;

  if (shift_residual(op, xi0) > 1e-6)
    throw CalibrationFailure("calibrate_D: residual above tolerance");
  return op;
}

double gaussian_derivative_identity_check(const RootSystem& rs, double t) {
  std::mt19937 rng(9214u);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  const double h = 1e-3;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd y(rs.rank);
    for (int j = 0; j < rs.rank; ++j) y[j] = uni(rng);
    double lhs;
    if (rs.rank == 1) {
      const auto& a = rs.positive_roots[0];
      lhs = (-a.dot(y) / (2.0 * t)) * std::exp(-y.squaredNorm() / (4.0 * t));
    } else {
      auto f = [&](const Eigen::VectorXd& v) {
        return std::exp(-v.squaredNorm() / (4.0 * t));
      };
      lhs = nested_directional(rs, f, y, h, 0);
    }
    double rhs = std::exp(-y.squaredNorm() / (4.0 * t));
    for (const auto& a : rs.positive_roots) rhs *= -a.dot(y) / (2.0 * t);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

double kos_isometry(const SpectralProfile& p, double t,
                    const QuadratureSpec& quad) {
  if (p.is_zero()) return 0.0;
  const double pref = std::exp(t) / (2.0 * std::sqrt(4.0 * M_PI * t));
  const double ymax = ymax_for(p, t, quad.abs_tol);
  const QuadratureSpec inner = quad.inner();
  // D applied under the spectral integral: the continued spherical function
  // becomes 2 cosh(xi y), so each y sees a clean Gaussian-weighted integral.
  auto d_orbital = [&](double y) {
    const double cutoff = h3::spectral_cutoff_sq(p, t, std::abs(y), quad);
    return integrate(
        [&](double xi) {
          const double lw = log_sq_weight(p, t, xi);
          if (std::isinf(lw)) return 0.0;
          return 2.0 * cosh_scaled(xi * y, lw);
        },
        0.0, cutoff, inner);
  };
  const double integral = integrate(
      [&](double y) {
        return d_orbital(y) * std::exp(-y * y / (4.0 * t));
      },
      -ymax, ymax, quad);
  return pref * integral;
}

std::pair<double, double> integration_by_parts_check(
    const SpectralProfile& p, double t, const QuadratureSpec& quad) {
  if (p.is_zero()) return {0.0, 0.0};
  const double rcap = 2.0 * ymax_for(p, t, quad.abs_tol);
  const QuadratureSpec inner = quad.inner();
  // Adjoint form: the Gaussian picks up the sine Jacobian and the polar
  // density; the orbital factor continues through the singular radii via
  // the entire quotient.
  auto orbital_cont = [&](double r) {
    const double cutoff = h3::spectral_cutoff_sq(p, t, r, quad);
    return integrate(
        [&](double xi) {
          const double lw = log_sq_weight(p, t, xi);
          if (std::isinf(lw)) return 0.0;
          return sinhc_scaled(xi * r, lw);
        },
        0.0, cutoff, inner);
  };
  const double v1 =
      std::exp(t) * integrate(
                        [&](double r) {
                          return orbital_cont(r) * heat_gaussian(3, t, r) *
                                 4.0 * M_PI * r * r;
                        },
                        0.0, rcap, quad);
  const double r_limit = 6.0 * std::sqrt(t) + M_PI;
  const double v2 = iso::gf_euclid(p, t, r_limit, quad);
  return {v1, v2};
}

}  // namespace sbtube::kos
