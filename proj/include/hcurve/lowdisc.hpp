#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hcurve/common.hpp"

namespace hcurve {

/// Additive-recurrence (Kronecker) low-discrepancy sequence in [0,1)^d with
/// the generalized golden-ratio step; the seed picks a Cranley-Patterson shift.
/// Prefixes are stable: the first N points never depend on how many are drawn.
class KroneckerSequence {
 public:
  KroneckerSequence(std::size_t dim, std::uint64_t seed) : step_(dim), state_(dim) {
    // phi_d is the unique positive root of x^(d+1) = x + 1.
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dim + 1));
    std::uint64_t s = seed;
    for (std::size_t k = 0; k < dim; ++k) {
      step_[k] = std::fmod(std::pow(1.0 / phi, static_cast<double>(k + 1)), 1.0);
      state_[k] = static_cast<double>(splitmix(s) >> 11) * 0x1.0p-53;
    }
  }

  std::size_t dim() const { return step_.size(); }

  /// Writes the next point into out[0..dim).
  void next(double* out) {
    for (std::size_t k = 0; k < step_.size(); ++k) {
      state_[k] += step_[k];
      if (state_[k] >= 1.0) state_[k] -= 1.0;
      out[k] = state_[k];
    }
  }

 private:
  static std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::vector<double> step_;
  std::vector<double> state_;
};

/// Area-uniform quasi-random points in an open disc.
inline std::vector<Complex> quasi_random_disc_points(const Disc& disc, std::size_t count,
                                                     std::uint64_t seed) {
  KroneckerSequence seq(2, seed);
  std::vector<Complex> pts;
  pts.reserve(count);
  double u[2];
  for (std::size_t i = 0; i < count; ++i) {
    seq.next(u);
    double rho = disc.radius * std::sqrt(u[0]);
    pts.push_back(disc.center + std::polar(rho, kTwoPi * u[1]));
  }
  return pts;
}

}  // namespace hcurve
