#pragma once

#include "sbtube/numerics.hpp"
#include "sbtube/spectral_profile.hpp"

namespace sbtube::h3 {

// Scalar helpers for the rank-one geometry of hyperbolic 3-space. The rank
// space is one dimensional with a unit root, |rho|^2 = 1, d = 3, and polar
// density 4 pi r^2.
inline double jc_half(double r) { return sinc(r); }
inline double jnc_half(double r) { return sinhc(r); }
inline double psi(double xi, double r) { return sinhc(xi * r); }
inline double phi_cont(double xi, double r) {
  return sinhc(xi * r) / sinc(r);
}
inline double polar_density(double r) { return 4.0 * M_PI * r * r; }

// Spectral cutoffs. The Gaussian decay rate is the smallest heat time in
// the integrand: the profile enters squared (rate total_heat) or linearly
// (rate total_heat / 2), optionally against a factor exp(-t (xi^2+1)) and
// an exponential growth exp(growth * xi). Compact profiles cap at their
// support edge. Throws GrowthError when nothing decays.
double spectral_cutoff_sq(const SpectralProfile& p, double t, double growth,
                          const QuadratureSpec& quad);
double spectral_cutoff_lin(const SpectralProfile& p, double t_extra,
                           double growth, const QuadratureSpec& quad);

// Radial spherical transform: f^(xi) = (4 pi / xi) * integral of
// f(r) sin(xi r) sinh(r) dr. Samples a grid profile on [0, xi_max].
SpectralProfile spherical_forward(const RadialFunction& f,
                                  const QuadratureSpec& quad,
                                  double xi_max = 0.0, int n_nodes = 241);

// Inverse transform at radius r:
// f(r) = c_P * integral of f^(xi) sin(xi r)/(xi sinh r) xi^2 dxi.
double spherical_inverse(const SpectralProfile& p, double r,
                         const QuadratureSpec& quad = {});

// Squared Plancherel norm: integral of |f^|^2 d mu_Pl.
double plancherel_norm_sq(const SpectralProfile& p,
                          const QuadratureSpec& quad = {});

// Heat evolution in spectral form; exact on tagged profiles.
SpectralProfile heat_apply(const SpectralProfile& p, double t);

// Holomorphically extended function at the radial crown point exp(i Y),
// |Y| = r < pi (DomainError beyond). Throws GrowthError when the profile
// fails the dominance test at the cutoff frequency.
double eval_extension(const SpectralProfile& pF, double r,
                      const QuadratureSpec& quad = {});

// Orbital integral of |F|^2 through exp(i Y / 2), |Y| = r < pi, where
// F = e^{t Delta / 2} f and p is the profile of f.
double orbital_integral(const SpectralProfile& p, double t, double r,
                        const QuadratureSpec& quad = {});

}  // namespace sbtube::h3
