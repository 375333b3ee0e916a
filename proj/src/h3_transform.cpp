#include "sbtube/h3_transform.hpp"

#include <cmath>
#include <vector>

namespace sbtube::h3 {

namespace {

constexpr double kCP = 1.0 / (2.0 * M_PI * M_PI);

}  // namespace

namespace {

double cutoff_core(const SpectralProfile& p, double t_eff, double growth,
                   const QuadratureSpec& quad) {
  if (!(t_eff > 0.0)) {
    if (p.compact_support()) return p.support_sup();
    throw GrowthError("spectral cutoff: no Gaussian decay in the integrand");
  }
  const double rule = xi_cutoff(t_eff, quad.abs_tol) + growth / t_eff;
  if (p.compact_support()) return std::min(rule, p.support_sup());
  return rule;
}

}  // namespace

double spectral_cutoff_sq(const SpectralProfile& p, double t, double growth,
                          const QuadratureSpec& quad) {
  double t_eff = t;
  const double rate = p.total_heat();
  if (rate > 0.0) t_eff = (t_eff > 0.0) ? std::min(t_eff, rate) : rate;
  return cutoff_core(p, t_eff, growth, quad);
}

double spectral_cutoff_lin(const SpectralProfile& p, double t_extra,
                           double growth, const QuadratureSpec& quad) {
  double t_eff = t_extra;
  const double rate = 0.5 * p.total_heat();
  if (rate > 0.0) t_eff = (t_eff > 0.0) ? std::min(t_eff, rate) : rate;
  return cutoff_core(p, t_eff, growth, quad);
}

SpectralProfile spherical_forward(const RadialFunction& f,
                                  const QuadratureSpec& quad, double xi_max,
                                  int n_nodes) {
  double r_sup;
  if (f.is_heat()) {
    const double s = f.heat_time();
    const double L = std::max(1.0, std::log(1.0 / quad.abs_tol));
    r_sup = s + std::sqrt(2.0 * s * (L + 4.0)) + 8.0 * std::sqrt(s) + 1.0;
  } else {
    r_sup = f.support_sup();
  }
  if (xi_max <= 0.0) xi_max = 8.0;

  std::vector<double> xs(n_nodes), vs(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double xi = xi_max * i / (n_nodes - 1);
    xs[i] = xi;
    // (4 pi / xi) sin(xi r) -> 4 pi r sinc(xi r) removes the xi = 0 limit.
    // The profile stores the norm of the transform, hence the magnitude.
    vs[i] = std::abs(4.0 * M_PI *
                     integrate(
                         [&](double r) {
                           return f.value(r) * r * sinc(xi * r) *
                                  std::sinh(r);
                         },
                         0.0, r_sup, quad));
  }
  return SpectralProfile::from_grid(std::move(xs), std::move(vs));
}

double spherical_inverse(const SpectralProfile& p, double r,
                         const QuadratureSpec& quad) {
  const double cutoff = spectral_cutoff_lin(p, 0.0, 0.0, quad);
  // sin(xi r) / (xi sinh r) = sinc(xi r) / sinhc(r): smooth in both limits.
  const double jnc = sinhc(r);
  return integrate(
      [&](double xi) {
        return p.value(xi) * sinc(xi * r) / jnc * kCP * xi * xi;
      },
      0.0, cutoff, quad);
}

double plancherel_norm_sq(const SpectralProfile& p,
                          const QuadratureSpec& quad) {
  if (p.is_zero()) return 0.0;
  if (!p.compact_support() && !(p.total_heat() > 0.0))
    throw FiniteLimitAbsent("plancherel_norm_sq: profile norm diverges");
  const double cutoff = spectral_cutoff_sq(p, 0.0, 0.0, quad);
  return integrate(
      [&](double xi) {
        const double v = p.value(xi);
        return v * v * kCP * xi * xi;
      },
      0.0, cutoff, quad);
}

SpectralProfile heat_apply(const SpectralProfile& p, double t) {
  if (!(t > 0.0)) throw DomainError("heat_apply: t must be positive");
  return p.evolved(t);
}

double eval_extension(const SpectralProfile& pF, double r,
                      const QuadratureSpec& quad) {
  if (r >= M_PI) throw DomainError("eval_extension: |Y| must be below pi");
  if (r < 0.0) throw DomainError("eval_extension: negative radius");
  const double cutoff = spectral_cutoff_lin(pF, 0.0, r, quad);
  if (!pF.compact_support()) {
    // Dominance test: the integrand must be decreasing at the cutoff.
    auto mag = [&](double xi) {
      return pF.value(xi) * std::exp(xi * r) * (xi * xi + 1.0);
    };
    if (mag(cutoff) > mag(0.9 * cutoff) || mag(cutoff) > quad.abs_tol)
      throw GrowthError("eval_extension: profile not dominated at cutoff");
  }
  return integrate(
      [&](double xi) {
        return pF.value(xi) * phi_cont(xi, r) * kCP * xi * xi;
      },
      0.0, cutoff, quad);
}

double orbital_integral(const SpectralProfile& p, double t, double r,
                        const QuadratureSpec& quad) {
  if (!(r < M_PI)) throw DomainError("orbital_integral: |Y| must be below pi");
  if (r < 0.0) throw DomainError("orbital_integral: negative radius");
  const double cutoff = spectral_cutoff_sq(p, t, r, quad);
  return integrate(
      [&](double xi) {
        const double w = p.value(xi);
        return w * w * std::exp(-t * (xi * xi + 1.0)) * phi_cont(xi, r) *
               kCP * xi * xi;
      },
      0.0, cutoff, quad);
}

}  // namespace sbtube::h3
