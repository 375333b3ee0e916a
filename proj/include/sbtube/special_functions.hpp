#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "sbtube/numerics.hpp"
#include "sbtube/root_system.hpp"

namespace sbtube {

struct HeatParams {
  double t = 0.5;

  void validate() const {
    if (!(t > 0.0)) throw ConfigError("HeatParams: t must be positive");
  }
};

// Numerical policy for evaluating the entire spherical quotient near the
// zero set of pi(xi) * pi(Y).
struct SphericalEvalConfig {
  double cancellation_threshold = 1e-3;
  int series_terms = 12;
};

// A(xi, Y) = sum over W of det(w) exp(-<w xi, Y>). Antisymmetric in both
// slots and symmetric under swapping them.
double weyl_sum_A(const RootSystem& rs, const WeylGroup& w,
                  const Eigen::VectorXd& xi, const Eigen::VectorXd& Y);

// Entire continuation of the spherical function times the half Jacobian:
// Psi_xi(Y) = C * A(xi, Y) / (pi(xi) pi(Y)), normalized so Psi_xi(0) = 1.
// Finite for every Y; Weyl-invariant in each slot.
double psi_entire(const RootSystem& rs, const WeylGroup& w,
                  const Eigen::VectorXd& xi, const Eigen::VectorXd& Y,
                  const SphericalEvalConfig& cfg = {});
double psi_entire(const RootSystem& rs, const Eigen::VectorXd& xi,
                  const Eigen::VectorXd& Y,
                  const SphericalEvalConfig& cfg = {});

// Analytically continued spherical function phi_xi(e^{iY}); singular where
// the sine Jacobian vanishes (SingularPoint).
double phi_continued(const RootSystem& rs, const Eigen::VectorXd& xi,
                     const Eigen::VectorXd& Y,
                     const SphericalEvalConfig& cfg = {});

// Flat counterpart psi_xi(iY) = sum over W of exp(-<w xi, Y>); equals |W|
// at the origin.
double psi_euclidean(const RootSystem& rs, const WeylGroup& w,
                     const Eigen::VectorXd& xi, const Eigen::VectorXd& Y);

// exp(-r^2 / 4t) / (4 pi t)^{d/2}; unit mass over R^d.
double heat_gaussian(int d, double t, double r);

// Unwrapped compact-side heat kernel density at time t2, radial argument Y
// in the rank space.
double nu_c_unwrapped(const RootSystem& rs, double t2,
                      const Eigen::VectorXd& Y);

// alpha(Y) = nu^c_{2t}(Y) j^c(Y): the Gaussian-damped density whose sine
// factor cancels the spherical singularities.
double alpha_density(const RootSystem& rs, double t, const Eigen::VectorXd& Y);

// Noncompact heat kernel density at time t.
double nu_nc(const RootSystem& rs, double t, const Eigen::VectorXd& Y);

// I(d,t,s,b) = integral over the ball |y| <= b in R^d of
// exp(s y_1) exp(-|y|^2/4t) / (4 pi t)^{d/2}. Nondecreasing in b with limit
// exp(t s^2). Closed erf forms for d in {1,3}; an incomplete-gamma series
// otherwise.
double gaussian_ball_I(int d, double t, double s, double b);

// gaussian_ball_I scaled by exp(-t s^2); always in [0, 1].
double gaussian_ball_fraction(int d, double t, double s, double b);

// Spectral multiplier of the tube integral: beta_R(lambda) for lambda at
// least |rho|^2 (DomainError below). Tends to 1 as R grows.
double beta_R(const RootSystem& rs, double t, double lambda, double R);

// Average of (u . e1)^n over the unit sphere of R^d (normalized measure).
double sphere_moment(int d, int n);

// Spherical average of exp(sqrt(sigma) y_1) at radius r, as a function of
// sigma * r^2 (valid for either sign of sigma).
double radial_average_exp(int d, double sigma_r2);

// Both sides of the radialization identity: for an eigenfunction Psi of the
// Euclidean Laplacian with eigenvalue sigma and a radial weight beta,
//   integral of Psi * beta over |Y| <= 2R
//     equals Psi(0) * integral of exp(sqrt(sigma) y1) * beta.
// The left side is evaluated by full d-dimensional quadrature (d <= 3), the
// right by a single radial quadrature. The eigenfunction property is probed
// by finite differences at 10 pseudo-random points (NotAnEigenfunction).
std::pair<double, double> euclid_radialization_check(
    int d, double sigma, const std::function<double(const Eigen::VectorXd&)>& psi,
    const std::function<double(double)>& beta_radial, double R,
    const QuadratureSpec& quad = {});

}  // namespace sbtube
