#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sbtube/errors.hpp"

namespace sbtube {

// Natural cubic spline through strictly increasing abscissae. Zero outside
// the grid.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the nodes
};

// Plancherel density for radial analysis on H^3: xi^2 / (2 pi^2) on [0, inf).
struct PlancherelMeasure {
  double c_p = 1.0 / (2.0 * M_PI * M_PI);
  double density(double xi) const { return c_p * xi * xi; }
};

// The spectral profile xi -> |f^(xi)|: a closed-form heat profile
// exp(-s (xi^2 + 1) / 2), a sharp band indicator on [0, a], or a sampled
// grid with cubic interpolation. An extra heat factor exp(-tau (xi^2+1)/2)
// of either sign rides along so that heat evolution and its inverse stay
// exact on every representation.
class SpectralProfile {
 public:
  enum class Kind { Heat, Band, Grid };

  static SpectralProfile heat(double s);
  static SpectralProfile band(double a);
  static SpectralProfile from_grid(std::vector<double> xi,
                                   std::vector<double> values);

  double value(double xi) const;
  Kind kind() const { return kind_; }
  double heat_time() const { return s_; }      // Heat kind only
  double band_limit() const { return a_; }     // Band kind only
  double extra_heat() const { return tau_; }

  // Pointwise multiplication by exp(-t (xi^2 + 1) / 2); exact on tags.
  SpectralProfile evolved(double t) const;

  // True when the profile vanishes identically beyond some frequency.
  bool compact_support() const { return kind_ != Kind::Heat; }
  // Supremum of the support for compact profiles, grid/band extent.
  double support_sup() const;
  // Total Gaussian decay rate: s + tau for heat profiles, tau otherwise.
  double total_heat() const;

  bool is_zero() const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::Heat;
  double s_ = 0.0;    // heat tag parameter
  double a_ = 0.0;    // band edge
  double tau_ = 0.0;  // extra heat factor (may be negative)
  CubicSpline spline_;
};

// Radial physical-space function on H^3: a heat kernel tag or a sampled
// grid. The heat tag evaluates the closed-form kernel
//   p_s(r) = e^{-s/2} e^{-r^2/2s} / ((2 pi s)^{3/2} sinhc(r)).
class RadialFunction {
 public:
  static RadialFunction heat_kernel(double s);
  static RadialFunction from_grid(std::vector<double> r,
                                  std::vector<double> values);

  double value(double r) const;
  bool is_heat() const { return heat_.has_value(); }
  double heat_time() const { return heat_.value(); }
  double support_sup() const;

 private:
  std::optional<double> heat_;
  CubicSpline spline_;
};

}  // namespace sbtube
