#pragma once

#include <Eigen/Dense>
#include <utility>

#include "sbtube/root_system.hpp"
#include "sbtube/spectral_profile.hpp"
#include "sbtube/special_functions.hpp"

namespace sbtube::kos {

// Shift operator D = C_D * prod(-D_alpha) o (multiplication by
// prod sin<alpha, Y>): maps continued spherical functions to their flat
// Weyl-sum counterparts. Rank 1 differentiates symbolically; rank 2 uses
// fourth-order central differences with the given step.
struct ShiftOperator {
  RootSystem rs;
  WeylGroup weyl;
  double c_d = 0.0;
  double fd_step = 1e-3;

  // Applies D to the continued spherical function with parameter xi.
  double apply_to_phi(const Eigen::VectorXd& xi,
                      const Eigen::VectorXd& Y) const;
};

// Fixes C_D so that D phi_xi0 = psi_xi0 at 20 probe points (xi0 = 1.5 e1),
// then verifies the residual (CalibrationFailure above 1e-6).
ShiftOperator calibrate_D(const RootSystem& rs, double t);

// Max relative residual of D phi_xi = psi_xi over the probe set for an
// already calibrated operator; the constant is xi-independent.
double shift_residual(const ShiftOperator& op, const Eigen::VectorXd& xi);

// Max relative error over 100 probe points of
//   prod D_alpha e^{-|Y|^2/4t}  vs  prod(-<alpha,Y>/2t) e^{-|Y|^2/4t}.
double gaussian_derivative_identity_check(const RootSystem& rs, double t);

// The shift-operator isometry on H^3: applies D under the spectral
// integral (turning the continued spherical function into 2 cosh(xi y))
// and integrates against the rank-space Gaussian. Equals the squared
// Plancherel norm of the profile.
double kos_isometry(const SpectralProfile& p, double t,
                    const QuadratureSpec& quad = {});

// Pair (adjoint-form tube integral, gf_euclid at large R): the two finished
// formulas related by the formal integration by parts.
std::pair<double, double> integration_by_parts_check(
    const SpectralProfile& p, double t, const QuadratureSpec& quad = {});

}  // namespace sbtube::kos
