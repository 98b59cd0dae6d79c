#pragma once

#include <cstdint>
#include <string>

#include "hcurve/potential.hpp"

namespace hcurve {

/// Seeded mixture of atoms and Gaussian bumps whose mass in D(0, R) keeps
/// growing with R (atoms of mass ~1.5^k near radius 2^k). Reproducible across
/// platforms: only the raw 64-bit generator output is used.
MeasurePtr synthetic_mixture(std::uint64_t seed, std::size_t index, std::string* description = nullptr);

}  // namespace hcurve
