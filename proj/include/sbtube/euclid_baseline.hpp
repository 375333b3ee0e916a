#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "sbtube/errors.hpp"

namespace sbtube::e1d {

// Uniformly sampled compactly supported function on [-L, L].
struct SampledLine {
  double length = 0.0;  // half-width L
  std::vector<double> values;

  static SampledLine sample(double L, int n, double (*f)(double));
  template <class F>
  static SampledLine from(double L, int n, const F& f) {
    if (n < 3 || n % 2 == 0)
      throw ConfigError("SampledLine: need an odd node count >= 3");
    SampledLine s;
    s.length = L;
    s.values.resize(n);
    for (int i = 0; i < n; ++i)
      s.values[i] = f(-L + 2.0 * L * i / (n - 1));
    return s;
  }
  double spacing() const {
    return 2.0 * length / (static_cast<int>(values.size()) - 1);
  }
};

// F(x + iy) = integral of (2 pi t)^{-1/2} exp(-(x+iy-u)^2 / 2t) f(u) du,
// evaluated by composite Simpson over the sample grid. TruncationError when
// the kernel tail at the grid edge exceeds abs_tol.
std::complex<double> sb_transform_1d(const SampledLine& f, double t, double x,
                                     double y, double abs_tol = 1e-12);

// Left and right side of the squared-norm identity: integral of |f|^2 over
// the line versus the double integral of |F(x+iy)|^2 against
// e^{-y^2/t} / sqrt(pi t) over the box [-X, X] x [-Y, Y]. Both sides are
// evaluated with the module's own fixed-panel Gauss-Legendre tensor rule.
std::pair<double, double> isometry_check_1d(const SampledLine& f, double t,
                                            double box_x, double box_y);

// integral of F(x + iy) e^{-y^2/2t} / sqrt(2 pi t) dy; recovers f(x).
double inversion_check_1d(const SampledLine& f, double t, double x);

// Samples of y -> |F(x0 + iy)|^2 for CSV emission.
std::vector<std::pair<double, double>> squared_slice(const SampledLine& f,
                                                     double t, double x0,
                                                     double y_max, int n);

}  // namespace sbtube::e1d
