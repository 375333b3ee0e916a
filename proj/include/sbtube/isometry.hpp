#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbtube/h3_transform.hpp"
#include "sbtube/numerics.hpp"
#include "sbtube/spectral_profile.hpp"

namespace sbtube::iso {

// Tube-norm curve R -> G_F(R) with one value column per computation route.
// Empty optionals mark radii outside a route's validity domain.
struct TubeCurve {
  std::vector<double> R_values;
  std::map<std::string, std::vector<std::optional<double>>> routes;
  double t = 0.0;
  std::string profile_desc;
  double xi_cutoff = 0.0;
  double tail_bound = 0.0;
  QuadratureSpec quad;

  static const std::vector<std::string>& route_names();
};

// G_F(R) through the flat Gaussian-ball bracket: a single spectral integral
// of |p|^2 e^{-t(xi^2+1)} e^{t} I(3, t, xi, 2R) d mu. Valid for every R > 0,
// nondecreasing, bounded by the Plancherel norm.
double gf_euclid(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad = {});

// Same quantity with the bracket evaluated by polar quadrature of the
// entire spherical quotient against the Gaussian: valid for every R because
// the integrand carries no singularity.
double gf_geometric(const SpectralProfile& p, double t, double R,
                    const QuadratureSpec& quad = {});

// Orbital route: integrates the (singular) orbital integral against the
// sine-damped density over the tube of radius 2R. Requires R < pi/2.
double gf_direct(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad = {});

// Even power series in R with nonnegative coefficients; SeriesNotConverged
// when the tail bound is not reached within n_max terms.
double gf_series(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad = {}, int n_max = 80);

// Spectral-multiplier form <f, beta_R(-Delta) f>; same integrand as
// gf_euclid after refactoring, kept as a regression guard.
double gf_beta(const SpectralProfile& p, double t, double R,
               const QuadratureSpec& quad = {});

struct SeriesDiagnostics {
  bool all_coefficients_nonnegative = true;
  int terms_used = 0;
};
double gf_series(const SpectralProfile& p, double t, double R,
                 const QuadratureSpec& quad, int n_max,
                 SeriesDiagnostics* diag);

// Full curve over an R grid (default: 0.1 up to 6 sqrt(t) + pi, with pi/2
// inserted exactly), all applicable routes per point.
TubeCurve global_isometry_report(const SpectralProfile& p, double t,
                                 const QuadratureSpec& quad = {},
                                 std::vector<double> R_grid = {});

enum class InversionRoute { Direct, Spectral };

// Base-point inversion integral at tube radius R. The spectral route is
// entire in R; the direct route needs R < pi. Both converge to f(x0).
double inversion_at_base(const SpectralProfile& p, double t, double R,
                         InversionRoute route, const QuadratureSpec& quad = {});

// Spectral division recovering f^ from the restricted profile of F;
// FiniteLimitAbsent when the reconstruction norm integral diverges.
SpectralProfile surjectivity_reconstruct(const SpectralProfile& pF, double t);

// Growth-bound table for the nonexistence of an invariant density: per xi,
// the tube pairing LHS(xi), the target RHS(xi) = e^{t(xi^2+1)}, their ratio,
// and LHS * xi * e^{-pi xi} against the mass constant M.
struct ImpossibilityTable {
  std::vector<double> xi;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> ratio;
  std::vector<double> bound_stat;
  double mass_constant = 0.0;
};

// Radial density on the ball of radius pi whose quotient by the sine
// Jacobian is supplied analytically, so the tube pairing against the
// continued spherical function stays finite.
struct RadialDensity {
  std::function<double(double)> value;          // alpha(r)
  std::function<double(double)> over_jc_half;   // alpha(r) / sinc(r)
};

RadialDensity truncated_alpha_density(double t);

ImpossibilityTable no_invariant_density_demo(double t,
                                             const RadialDensity& alpha,
                                             const std::vector<double>& xi_grid,
                                             const QuadratureSpec& quad = {});

// Shell diagnostics at |Y| = s for the cancellation demonstration: the raw
// orbital shell (no sine factor), the same multiplied by sin(s), and the
// entire-quotient route shell.
struct ShellSample {
  double s = 0.0;
  double raw = 0.0;
  double times_sin = 0.0;
  double psi_route = 0.0;
};
ShellSample shell_integrand(const SpectralProfile& p, double t, double s,
                            const QuadratureSpec& quad = {});
// Continuation of raw * sin to s = pi (finite nonzero limit).
double shell_times_sin_limit(const SpectralProfile& p, double t,
                             const QuadratureSpec& quad = {});

}  // namespace sbtube::iso
