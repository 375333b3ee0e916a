#pragma once

#include <stdexcept>
#include <string>

namespace sbtube {

// Error hierarchy shared by all modules. Every failure mode surfaced to a
// caller is one of these; anything else escaping is a bug.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reflection closure of a root system exceeded the hard element cap.
struct ClosureOverflow : Error {
  using Error::Error;
};

// Continued spherical function requested at a zero of the sine Jacobian.
struct SingularPoint : Error {
  using Error::Error;
};

// Adaptive refinement exhausted its panel budget.
struct QuadratureFailure : Error {
  using Error::Error;
};

// Argument outside the validity domain of a formula.
struct DomainError : Error {
  using Error::Error;
};

// Spectral integrand not dominated at the cutoff frequency.
struct GrowthError : Error {
  using Error::Error;
};

// Power-series tail bound not reached within the term budget.
struct SeriesNotConverged : Error {
  using Error::Error;
};

// The finiteness criterion for membership in the transform image failed.
struct FiniteLimitAbsent : Error {
  using Error::Error;
};

// Shift-operator calibration residual above tolerance.
struct CalibrationFailure : Error {
  using Error::Error;
};

// Finite-difference eigenfunction check failed for a supplied callable.
struct NotAnEigenfunction : Error {
  using Error::Error;
};

// Sampled-grid truncation tail above tolerance.
struct TruncationError : Error {
  using Error::Error;
};

// Configuration file / CLI argument problem.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sbtube
