#include "hcurve/synthetic.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace hcurve {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

MeasurePtr synthetic_mixture(std::uint64_t seed, std::size_t index, std::string* description) {
  std::mt19937_64 rng(seed * 1000003ULL + index * 7919ULL + 17ULL);
  std::vector<Atom> atoms;
  const int levels = 10 + static_cast<int>(unit(rng) * 4.0);
  for (int k = 0; k < levels; ++k) {
    double radius = std::ldexp(1.0, k) * (0.7 + 0.6 * unit(rng));
    double angle = kTwoPi * unit(rng);
    double mass = std::pow(1.5, k) * (0.5 + unit(rng));
    atoms.push_back({std::polar(radius, angle), mass});
  }
  std::vector<MeasurePtr> parts{std::make_shared<AtomicMeasure>(atoms)};
  const int bumps = 1 + static_cast<int>(unit(rng) * 3.0);
  std::ostringstream desc;
  desc << levels << " atoms";
  for (int b = 0; b < bumps; ++b) {
    double radius = 1.0 + 200.0 * unit(rng);
    double angle = kTwoPi * unit(rng);
    double sigma = 0.2 + 2.8 * unit(rng);
    double mass = 1.0 + 49.0 * unit(rng);
    parts.push_back(std::make_shared<GaussianBump>(std::polar(radius, angle), mass, sigma));
  }
  desc << ", " << bumps << " gaussian bumps";
  if (description) *description = desc.str();
  return std::make_shared<MixtureMeasure>(std::move(parts));
}

}  // namespace hcurve
