#include "sbtube/spectral_profile.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sbtube/numerics.hpp"

namespace sbtube {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw ConfigError("CubicSpline: need at least two nodes");
  for (int i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw ConfigError("CubicSpline: abscissae must be strictly increasing");
  // Natural spline: tridiagonal system for second derivatives.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  A(0, 0) = 1.0;
  A(n - 1, n - 1) = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    A(i, i - 1) = h0 / 6.0;
    A(i, i) = (h0 + h1) / 3.0;
    A(i, i + 1) = h1 / 6.0;
    b(i) = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
  }
  Eigen::VectorXd m = A.partialPivLu().solve(b);
  m_.assign(m.data(), m.data() + n);
}

double CubicSpline::operator()(double x) const {
  if (x_.empty() || x < x_.front() || x > x_.back()) return 0.0;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  if (i >= static_cast<int>(x_.size()) - 1) i = static_cast<int>(x_.size()) - 2;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

SpectralProfile SpectralProfile::heat(double s) {
  if (!(s > 0.0)) throw ConfigError("SpectralProfile::heat: s must be positive");
  SpectralProfile p;
  p.kind_ = Kind::Heat;
  p.s_ = s;
  return p;
}

SpectralProfile SpectralProfile::band(double a) {
  if (!(a > 0.0)) throw ConfigError("SpectralProfile::band: a must be positive");
  SpectralProfile p;
  p.kind_ = Kind::Band;
  p.a_ = a;
  return p;
}

SpectralProfile SpectralProfile::from_grid(std::vector<double> xi,
                                           std::vector<double> values) {
  for (double v : values) {
    if (v < -1e-12)
      throw ConfigError("SpectralProfile: grid values must be nonnegative");
  }
  for (double& v : values) v = std::max(v, 0.0);
  SpectralProfile p;
  p.kind_ = Kind::Grid;
  p.spline_ = CubicSpline(std::move(xi), std::move(values));
  return p;
}

double SpectralProfile::value(double xi) const {
  double base = 0.0;
  switch (kind_) {
    case Kind::Heat:
      base = std::exp(-0.5 * s_ * (xi * xi + 1.0));
      break;
    case Kind::Band:
      base = (xi <= a_) ? 1.0 : 0.0;
      break;
    case Kind::Grid:
      base = spline_(xi);
      break;
  }
  if (tau_ != 0.0) base *= std::exp(-0.5 * tau_ * (xi * xi + 1.0));
  return base;
}

SpectralProfile SpectralProfile::evolved(double t) const {
  SpectralProfile p = *this;
  if (kind_ == Kind::Heat)
    p.s_ += t;  // may leave s <= 0: a growing profile, callers must test
  else
    p.tau_ += t;
  return p;
}

double SpectralProfile::support_sup() const {
  switch (kind_) {
    case Kind::Heat:
      return std::numeric_limits<double>::infinity();
    case Kind::Band:
      return a_;
    case Kind::Grid:
      return spline_.xs().back();
  }
  return 0.0;
}

double SpectralProfile::total_heat() const {
  return (kind_ == Kind::Heat) ? s_ + tau_ : tau_;
}

bool SpectralProfile::is_zero() const {
  if (kind_ != Kind::Grid) return false;
  for (double v : spline_.ys())
    if (v != 0.0) return false;
  return true;
}

std::string SpectralProfile::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Heat:
      os << "heat:" << s_;
      break;
    case Kind::Band:
      os << "band:" << a_;
      break;
    case Kind::Grid:
      os << "grid[" << spline_.xs().size() << "]";
      break;
  }
  if (tau_ != 0.0) os << "*heat:" << tau_;
  return os.str();
}

RadialFunction RadialFunction::heat_kernel(double s) {
  if (!(s > 0.0)) throw ConfigError("RadialFunction: s must be positive");
  RadialFunction f;
  f.heat_ = s;
  return f;
}

RadialFunction RadialFunction::from_grid(std::vector<double> r,
                                         std::vector<double> values) {
  RadialFunction f;
  f.spline_ = CubicSpline(std::move(r), std::move(values));
  return f;
}

double RadialFunction::value(double r) const {
  if (heat_) {
    const double s = *heat_;
    return std::exp(-0.5 * s - r * r / (2.0 * s)) /
           (std::pow(2.0 * M_PI * s, 1.5) * sinhc(r));
  }
  return spline_(r);
}

double RadialFunction::support_sup() const {
  if (heat_) return std::numeric_limits<double>::infinity();
  return spline_.xs().back();
}

}  // namespace sbtube
