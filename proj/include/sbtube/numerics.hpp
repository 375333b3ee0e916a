#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "sbtube/errors.hpp"

namespace sbtube {

// Numerical contract attached to every integral in the library.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_panels = 4096;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw ConfigError("QuadratureSpec: tolerances must be positive");
    if (max_panels < 8)
      throw ConfigError("QuadratureSpec: max_panels must be >= 8");
  }

  // Tightened copy for the inner integral of a nested quadrature.
  QuadratureSpec inner() const {
    QuadratureSpec q = *this;
    q.abs_tol *= 1e-2;
    q.rel_tol *= 1e-2;
    return q;
  }
};

// Neumaier-compensated accumulator. Summation order is fixed by the caller,
// so results are independent of any parallel schedule.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1,1] (positive half; rule is symmetric).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double a, b;
  double value;   // Kronrod estimate
  double error;   // |Kronrod - Gauss|
};

template <class F>
PanelResult gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double resk = kGK15WeightsK[7] * fc;
  double resg = kGK15WeightsG[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kGK15Nodes[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kGK15WeightsK[j] * (f1 + f2);
    if (j % 2 == 1) resg += kGK15WeightsG[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

struct PanelWorse {
  bool operator()(const PanelResult& x, const PanelResult& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

}  // namespace detail

// Adaptive Gauss-Kronrod integration on [a,b]. Bisects the worst panel until
// the summed error estimate meets max(abs_tol, rel_tol*|I|) or the panel
// budget is exhausted (QuadratureFailure). The final sum runs left to right
// through a compensated accumulator, so the result does not depend on the
// refinement history beyond the panel set itself.
template <class F>
double integrate(const F& f, double a, double b, const QuadratureSpec& spec) {
  if (a == b) return 0.0;
  std::priority_queue<detail::PanelResult, std::vector<detail::PanelResult>,
                      detail::PanelWorse>
      heap;
  heap.push(detail::gk15(f, a, b));
  double total_err = heap.top().error;
  double total_val = heap.top().value;
  int panels = 1;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_val)) * 0.5) {
    if (panels >= spec.max_panels)
      throw QuadratureFailure("integrate: panel budget exhausted");
    detail::PanelResult worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    detail::PanelResult left = detail::gk15(f, worst.a, mid);
    detail::PanelResult right = detail::gk15(f, mid, worst.b);
    total_err += left.error + right.error - worst.error;
    total_val += left.value + right.value - worst.value;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  std::vector<detail::PanelResult> parts;
  parts.reserve(static_cast<std::size_t>(panels));
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](const detail::PanelResult& x, const detail::PanelResult& y) {
              return x.a < y.a;
            });
  CompensatedSum acc;
  for (const auto& p : parts) acc.add(p.value);
  return acc.value();
}

// sin(x)/x with the removable singularity filled by a 5-term series.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0 +
           x2 * x2 * x2 * x2 / 362880.0;
  }
  return std::sin(x) / x;
}

// sinh(x)/x, same treatment near zero.
inline double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0 +
           x2 * x2 * x2 * x2 / 362880.0;
  }
  return std::sinh(x) / x;
}

// sinhc(x) * exp(shift), safe when x alone would overflow.
inline double sinhc_scaled(double x, double shift) {
  const double ax = std::abs(x);
  if (ax > 30.0) {
    // sinh(|x|)/|x| = e^{|x|}(1 - e^{-2|x|}) / (2|x|)
    return std::exp(ax + shift) * (-std::expm1(-2.0 * ax)) / (2.0 * ax);
  }
  return sinhc(x) * std::exp(shift);
}

// cosh(x) * exp(shift) without overflowing on large |x|.
inline double cosh_scaled(double x, double shift) {
  const double ax = std::abs(x);
  return 0.5 * std::exp(ax + shift) * (1.0 + std::exp(-2.0 * ax));
}

// Scaled complementary error function e^{x^2} erfc(x) for x >= 0.
double erfcx(double x);

// Regularized lower incomplete gamma P(a,x), a > 0, x >= 0.
double gamma_p(double a, double x);

// Spectral cutoff rule: integrate xi on [0, xi_max] where
//   xi_max = max(band, sqrt(max(1, ln(1/abs_tol)) / t_eff) + 10 / sqrt(t_eff)),
// with t_eff the smallest heat time present in the integrand. The Gaussian
// decay e^{-t_eff xi^2} then dominates every admissible exponential growth
// factor at the cutoff.
inline double xi_cutoff(double t_eff, double abs_tol, double band = 0.0) {
  const double L = std::max(1.0, std::log(1.0 / abs_tol));
  return std::max(band, std::sqrt(L / t_eff) + 10.0 / std::sqrt(t_eff));
}

}  // namespace sbtube
