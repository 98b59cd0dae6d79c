#pragma once

#include "hcurve/common.hpp"

namespace hcurve {

/// A disc produced by the selection procedures together with its certificate.
struct DiscRecord {
  Complex center{0.0, 0.0};
  double radius = 0.0;
  double mass = 0.0;             // mu(D(a, r))
  double doubling_ratio = 0.0;   // mu(D(a, 2r)) / mu(D(a, r))
  double relative_radius = kInf; // r / |a|
  double governing_radius = 0.0; // R of the run that produced the disc

  Disc disc() const { return {center, radius}; }
};

}  // namespace hcurve
