#include "sbtube/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sbtube/special_functions.hpp"

namespace sbtube::iso {

namespace {

constexpr double kCP = 1.0 / (2.0 * M_PI * M_PI);

// log of the squared-profile route weight
//   |p(xi)|^2 e^{-t(xi^2+1)} e^{t} c_P xi^2,
// exact for heat profiles so that large-xi tails never underflow early.
double log_route_weight(const SpectralProfile& p, double t, double xi) {
  if (xi <= 0.0) return -std::numeric_limits<double>::infinity();
  const double base = -t * (xi * xi + 1.0) + t + std::log(kCP * xi * xi);
  if (p.kind() == SpectralProfile::Kind::Heat)
    return base - p.total_heat() * (xi * xi + 1.0);
  const double v = p.value(xi);
  if (v <= 0.0) return -std::numeric_limits<double>::infinity();
  return base + 2.0 * std::log(v);
}

double route_weight(const SpectralProfile& p, double t, double xi) {
  return std::exp(log_route_weight(p, t, xi));
}

}  // namespace

const std::vector<std::string>& TubeCurve::route_names() {
  static const std::vector<std::string> names = {"euclid", "geometric",
                                                 "direct", "series", "beta"};
  return names;
}

double gf_euclid(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad) {
  if (!(R > 0.0)) return 0.0;
  if (p.is_zero()) return 0.0;
  // weight * I(3,t,xi,2R) = |p|^2 c_P xi^2 * ball fraction: the exponential
  // pre-factors cancel identically, so work with the bounded fraction.
  const double cutoff = h3::spectral_cutoff_sq(p, t, 0.0, quad);
  return integrate(
      [&](double xi) {
        const double v = p.value(xi);
        return v * v * kCP * xi * xi *
               gaussian_ball_fraction(3, t, xi, 2.0 * R);
      },
      0.0, cutoff, quad);
}

double gf_geometric(const SpectralProfile& p, double t, double R,
                    const QuadratureSpec& quad) {
  if (!(R > 0.0)) return 0.0;
  if (p.is_zero()) return 0.0;
  const double cutoff = h3::spectral_cutoff_sq(p, t, 0.0, quad);
  const QuadratureSpec inner = quad.inner();
  const double log_gnorm = 1.5 * std::log(4.0 * M_PI * t);
  return integrate(
      [&](double xi) {
        const double lw = log_route_weight(p, t, xi);
        if (std::isinf(lw)) return 0.0;
        return integrate(
            [&](double r) {
              return sinhc_scaled(
                         xi * r,
                         lw - r * r / (4.0 * t) - log_gnorm) *
                     4.0 * M_PI * r * r;
            },
            0.0, 2.0 * R, inner);
      },
      0.0, cutoff, quad);
}

double gf_direct(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad) {
  if (!(R > 0.0)) return 0.0;
  if (R >= 0.5 * M_PI) throw DomainError("gf_direct: requires R below pi/2");
  if (p.is_zero()) return 0.0;
  const QuadratureSpec inner = quad.inner();
  return integrate(
      [&](double r) {
        const double orb = h3::orbital_integral(p, t, r, inner);
        return orb * std::exp(t) * h3::jc_half(r) * heat_gaussian(3, t, r) *
               h3::polar_density(r);
      },
      0.0, 2.0 * R, quad);
}

double gf_series(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad, int n_max,
                 SeriesDiagnostics* diag) {
  if (!(R > 0.0)) return 0.0;
  if (p.is_zero()) return 0.0;
  const double cutoff = h3::spectral_cutoff_sq(p, t, 0.0, quad);
  const double b = 2.0 * R;
  const double x = b * b / (4.0 * t);

  CompensatedSum acc;
  if (diag) *diag = {};
  double log_fact = 0.0;  // log n!
  for (int n = 0; n <= n_max; n += 2) {
    if (n > 0)
      log_fact += std::log(static_cast<double>(n - 1)) +
                  std::log(static_cast<double>(n));
    const double moment = integrate(
        [&](double xi) {
          const double lw = log_route_weight(p, t, xi);
          return std::isinf(lw) ? 0.0 : std::exp(lw + n * std::log(xi));
        },
        0.0, cutoff, quad);
    const double msphere = sphere_moment(3, n);
    // 4 pi (4 pi t)^{-3/2} int_0^b r^{n+2} e^{-r^2/4t} dr
    //   = (2/sqrt(pi)) (4t)^{n/2} Gamma((n+3)/2) P((n+3)/2, b^2/4t).
    const double a_half = 0.5 * (n + 3);
    const double log_radial = std::log(2.0 / std::sqrt(M_PI)) +
                              0.5 * n * std::log(4.0 * t) +
                              std::lgamma(a_half);
    const double radial = std::exp(log_radial) * gamma_p(a_half, x);
    const double coeff = msphere * moment;
    if (diag && coeff < 0.0) diag->all_coefficients_nonnegative = false;
    const double term = coeff * std::exp(-log_fact) * radial;
    acc.add(term);
    if (diag) diag->terms_used = n / 2 + 1;
    // Geometric tail comparison once the term ratio drops below one.
    const double ratio = (b * cutoff) * (b * cutoff) / ((n + 1.0) * (n + 2.0));
    if (ratio < 1.0) {
      const double tail = std::abs(term) * ratio / (1.0 - ratio);
      if (tail < quad.abs_tol) return acc.value();
    }
  }
  throw SeriesNotConverged("gf_series: term budget exhausted");
}

double gf_series(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad, int n_max) {
  return gf_series(p, t, R, quad, n_max, nullptr);
}

double gf_beta(const SpectralProfile& p, double t, double R,
               const QuadratureSpec& quad) {
  if (!(R > 0.0)) return 0.0;
  if (p.is_zero()) return 0.0;
  static const RootSystem h3rs = preset_root_system("h3");
  const double cutoff = h3::spectral_cutoff_sq(p, t, 0.0, quad);
  return integrate(
      [&](double xi) {
        const double v = p.value(xi);
        return v * v * kCP * xi * xi * beta_R(h3rs, t, xi * xi + 1.0, R);
      },
      0.0, cutoff, quad);
}

TubeCurve global_isometry_report(const SpectralProfile& p, double t,
                                 const QuadratureSpec& quad,
                                 std::vector<double> R_grid) {
  if (R_grid.empty()) {
    const double r_end = 6.0 * std::sqrt(t) + M_PI;
    for (double r = 0.1; r < r_end; r += 0.3) R_grid.push_back(r);
    R_grid.push_back(0.5 * M_PI);
    R_grid.push_back(r_end);
    std::sort(R_grid.begin(), R_grid.end());
    R_grid.erase(std::unique(R_grid.begin(), R_grid.end(),
                             [](double a, double b) {
                               return std::abs(a - b) < 1e-12;
                             }),
                 R_grid.end());
  }
  TubeCurve curve;
  curve.R_values = R_grid;
  curve.t = t;
  curve.profile_desc = p.describe();
  curve.quad = quad;
  curve.xi_cutoff = h3::spectral_cutoff_sq(p, t, 0.0, quad);
  curve.tail_bound =
      p.compact_support()
          ? 0.0
          : route_weight(p, t, curve.xi_cutoff) * curve.xi_cutoff;
  for (const auto& name : TubeCurve::route_names()) curve.routes[name] = {};
  for (double R : R_grid) {
    curve.routes["euclid"].push_back(gf_euclid(p, t, R, quad));
    curve.routes["geometric"].push_back(gf_geometric(p, t, R, quad));
    if (R < 0.5 * M_PI)
      curve.routes["direct"].push_back(gf_direct(p, t, R, quad));
    else
      curve.routes["direct"].push_back(std::nullopt);
    curve.routes["beta"].push_back(gf_beta(p, t, R, quad));
    std::optional<double> series;
    try {
      series = gf_series(p, t, R, quad);
    } catch (const SeriesNotConverged&) {
      series = std::nullopt;
    }
    curve.routes["series"].push_back(series);
  }
  return curve;
}

double inversion_at_base(const SpectralProfile& p, double t, double R,
                         InversionRoute route, const QuadratureSpec& quad) {
  if (!(R > 0.0)) return 0.0;
  if (p.is_zero()) return 0.0;
  if (route == InversionRoute::Spectral) {
    // e^{t/2} F^(xi) I(3, t/2, xi, R) collapses to p(xi) * ball fraction.
    const double cutoff = h3::spectral_cutoff_lin(p, 0.0, 0.0, quad);
    return integrate(
        [&](double xi) {
          return p.value(xi) * kCP * xi * xi *
                 gaussian_ball_fraction(3, 0.5 * t, xi, R);
        },
        0.0, cutoff, quad);
  }
  if (R >= M_PI)
    throw DomainError("inversion_at_base: direct route requires R below pi");
  const SpectralProfile pF = h3::heat_apply(p, t);
  const QuadratureSpec inner = quad.inner();
  return std::exp(0.5 * t) *
         integrate(
             [&](double r) {
               return h3::eval_extension(pF, r, inner) * h3::jc_half(r) *
                      heat_gaussian(3, 0.5 * t, r) * h3::polar_density(r);
             },
             0.0, R, quad);
}

SpectralProfile surjectivity_reconstruct(const SpectralProfile& pF, double t) {
  if (!(t > 0.0)) throw DomainError("surjectivity_reconstruct: t <= 0");
  if (!pF.compact_support() && !(pF.total_heat() > t))
    throw FiniteLimitAbsent(
        "surjectivity_reconstruct: reconstruction norm diverges");
  return pF.evolved(-t);
}

RadialDensity truncated_alpha_density(double t) {
  RadialDensity d;
  d.value = [t](double r) {
    if (r > M_PI) return 0.0;
    return std::exp(t) * h3::jc_half(r) * heat_gaussian(3, t, r);
  };
  d.over_jc_half = [t](double r) {
    if (r > M_PI) return 0.0;
    return std::exp(t) * heat_gaussian(3, t, r);
  };
  return d;
}

ImpossibilityTable no_invariant_density_demo(double t,
                                             const RadialDensity& alpha,
                                             const std::vector<double>& xi_grid,
                                             const QuadratureSpec& quad) {
  ImpossibilityTable table;
  table.xi = xi_grid;
  table.mass_constant = integrate(
      [&](double r) {
        return alpha.over_jc_half(r) / (2.0 * r) * 4.0 * M_PI * r * r;
      },
      0.0, M_PI, quad);
  for (double xi : xi_grid) {
    // The sine factors cancel against the supplied quotient, leaving the
    // entire kernel sinh(xi r)/(xi r) against alpha / jc_half.
    const double lhs = integrate(
        [&](double r) {
          return sinhc(xi * r) * alpha.over_jc_half(r) * 4.0 * M_PI * r * r;
        },
        0.0, M_PI, quad);
    const double rhs = std::exp(t * (xi * xi + 1.0));
    table.lhs.push_back(lhs);
    table.rhs.push_back(rhs);
    table.ratio.push_back(lhs / rhs);
    table.bound_stat.push_back(lhs * xi * std::exp(-M_PI * xi));
  }
  return table;
}

ShellSample shell_integrand(const SpectralProfile& p, double t, double s,
                            const QuadratureSpec& quad) {
  if (!(s > 0.0) || s >= M_PI)
    throw DomainError("shell_integrand: s must lie in (0, pi)");
  ShellSample out;
  out.s = s;
  const double env =
      std::exp(t) * heat_gaussian(3, t, s) * 4.0 * M_PI * s * s;
  const double orb = h3::orbital_integral(p, t, s, quad);
  out.raw = orb * env;
  out.times_sin = out.raw * std::sin(s);
  const double cutoff = h3::spectral_cutoff_sq(p, t, s, quad);
  const double psi_orb = integrate(
      [&](double xi) {
        const double v = p.value(xi);
        return v * v * std::exp(-t * (xi * xi + 1.0)) * h3::psi(xi, s) *
               kCP * xi * xi;
      },
      0.0, cutoff, quad);
  out.psi_route = psi_orb * env;
  return out;
}

double shell_times_sin_limit(const SpectralProfile& p, double t,
                             const QuadratureSpec& quad) {
  const double s = M_PI;
  const double env =
      std::exp(t) * heat_gaussian(3, t, s) * 4.0 * M_PI * s * s;
  const double cutoff = h3::spectral_cutoff_sq(p, t, s, quad);
  // orbital * sin continues through pi as the integral against sinh(xi s)/xi.
  const double val = integrate(
      [&](double xi) {
        const double v = p.value(xi);
        return v * v * std::exp(-t * (xi * xi + 1.0)) * s * sinhc(xi * s) *
               kCP * xi * xi;
      },
      0.0, cutoff, quad);
  return val * env;
}

}  // namespace sbtube::iso
