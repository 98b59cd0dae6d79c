#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hcurve {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open disc D(center, radius) = { z : |z - center| < radius }.
struct Disc {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

/// Bad input: malformed config, precondition violations, dimension mismatch.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not certify its own result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integrand of a winding count vanishes (numerically) on the contour.
class ZeroOnContourError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

// Signed angular distance b - a folded into (-pi, pi].
inline double angle_diff(double a, double b) {
  double d = std::remainder(b - a, kTwoPi);
  if (d <= -kPi) d += kTwoPi;
  return d;
}

}  // namespace hcurve
