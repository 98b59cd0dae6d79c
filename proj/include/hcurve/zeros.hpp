#pragma once

#include <optional>
#include <vector>

#include "hcurve/common.hpp"
#include "hcurve/curve.hpp"
#include "hcurve/projective.hpp"

namespace hcurve {

struct ContourSpec {
  Disc disc;
  std::size_t initial_nodes = 64;  // >= 32
  int max_depth = 20;              // bisection depth per initial arc, <= 24
  double boundary_floor = 1e-10;   // minimum relative modulus of P(F) on the contour
};

struct ZeroCount {
  long count = 0;
  double min_boundary_modulus = kInf;
  std::optional<double> jiggled_radius;  // set when the radius had to be moved off a zero
};

/// Number of zeros of P o F inside the disc, by the argument principle on the
/// normalized direction (the factor ||F|| never changes the argument). Arcs are
/// bisected until every half-arc phase increment is below pi/4 and the arc is
/// short against the turning rate of the components the form reads. A boundary
/// modulus under the floor moves the radius out by 0.7%, at
/// most five times, before ZeroOnContourError.
ZeroCount winding_count(const Curve& curve, const LinearForm& form, const ContourSpec& contour);

struct SectorCount {
  std::size_t form_index = 0;
  double radius = 0.0;
  long count = 0;
  double min_boundary_modulus = 0.0;
  std::optional<double> jiggled_radius;
};

/// Zero counts of every form in D(r e^{i ray_angle}, disc_fraction * r) for each r.
std::vector<SectorCount> sector_zero_scan(const Curve& curve, const DivisorSystem& system, double ray_angle,
                                          const std::vector<double>& radii, double disc_fraction = 0.25,
                                          const ContourSpec& base = {});

}  // namespace hcurve
