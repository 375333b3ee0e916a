#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sbtube/errors.hpp"

namespace sbtube {

// A reduced root system of rank <= 2 in which every root carries implicit
// multiplicity 2 (complex type). Total space dimension d = rank + 2*|roots|.
struct RootSystem {
  int rank = 0;
  std::vector<Eigen::VectorXd> positive_roots;

  int dim_total() const {
    return rank + 2 * static_cast<int>(positive_roots.size());
  }
};

struct WeylGroup {
  std::vector<Eigen::MatrixXd> elements;
  std::vector<int> signs;  // det(w), +1 or -1

  std::size_t size() const { return elements.size(); }
};

// Named presets: "h3" (rank 1, unit root, d = 3), "a1" (alias of the same
// data), "a1xa1" (two orthogonal unit roots, d = 6), "a2" (three unit roots
// at 60 degrees, d = 8). Throws ConfigError for unknown names.
RootSystem preset_root_system(const std::string& name);

// Checks: roots nonzero, reduced, and closed under mutual reflection.
void validate_root_system(const RootSystem& rs);

// Reflection matrix of v in the hyperplane orthogonal to alpha.
Eigen::MatrixXd reflection_matrix(const Eigen::VectorXd& alpha);

// Closure of the root reflections under products. Throws ClosureOverflow if
// the closure exceeds 1024 elements (malformed root data).
WeylGroup build_weyl_group(const RootSystem& rs);

// pi(v) = prod over positive roots of <alpha, v>. Alternating under W.
double pi_poly(const RootSystem& rs, const Eigen::VectorXd& v);

// |rho|^2 where rho = sum of positive roots (multiplicity 2 halves cancel).
double rho_sq(const RootSystem& rs);

// prod sin<alpha,Y>/<alpha,Y>  and  prod sinh<alpha,Y>/<alpha,Y>.
double jc_half(const RootSystem& rs, const Eigen::VectorXd& Y);
double jnc_half(const RootSystem& rs, const Eigen::VectorXd& Y);

// Density of generalized polar coordinates: mu(Y) = C * pi(Y)^2 with C fixed
// so that integrating a rotation-invariant function over the d-dimensional
// ball equals the polar integral over the positive chamber.
double polar_density_constant(const RootSystem& rs);
double polar_density(const RootSystem& rs, const Eigen::VectorXd& Y);

// Largest R with the full ball of radius R inside Omega.
double r_max(const RootSystem& rs);

// |<alpha,Y>| < scale * pi/2 for every root; scale is 1 (Omega) or 2.
bool in_omega(const RootSystem& rs, const Eigen::VectorXd& Y, double scale);

}  // namespace sbtube
