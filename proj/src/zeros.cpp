#include "hcurve/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcurve/parallel.hpp"

namespace hcurve {

namespace {

// Components more than e^40 below the largest cannot move the phase of P(F).
constexpr double kRelevantLogGap = 40.0;

struct PhaseSample {
  Complex unit;        // P(F(z)) / |P(F(z))|
  double modulus;      // relative modulus, see apply_form
  double rate;         // bound on the angular speed of the leading components
};

class ContourWalker {
 public:
  ContourWalker(const Curve& curve, const LinearForm& form, const ContourSpec& spec, double radius)
      : curve_(curve), form_(form), spec_(spec), radius_(radius), comps_(curve.component_count()),
        probe_(curve.component_count()) {}

  // Total phase change of P(F) around the circle, or nullopt when the contour
  // passes too close to a zero.
  std::optional<double> total_phase() {
    const std::size_t n = spec_.initial_nodes;
    const double dtheta = kTwoPi / static_cast<double>(n);
    PhaseSample first = eval(0.0);
    PhaseSample prev = first;
    double total = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      double theta = dtheta * static_cast<double>(k);
      PhaseSample next = (k == n) ? first : eval(theta);
      total += arc(theta - dtheta, prev, theta, next, 0);
      if (near_zero_) return std::nullopt;
      prev = next;
    }
    return total;
  }

  double min_modulus() const { return min_modulus_; }

 private:
  PhaseSample eval(double theta) {
    Complex z = spec_.disc.center + std::polar(radius_, theta);
    curve_.components(z, comps_);
    double rel = 0.0;
    LogComplex v = apply_form(form_, comps_, &rel);
    min_modulus_ = std::min(min_modulus_, rel);
    if (rel < spec_.boundary_floor || v.is_zero()) near_zero_ = true;

    // |d/dz log f_j| = |grad log|f_j|| bounds how fast each relevant component turns.
    const double eta = 1e-6 * std::max(1.0, std::abs(z));
    // Only components the form actually reads can turn its phase.
    const auto& coef = form_.coefficients();
    double top = -kInf;
    for (std::size_t j = 0; j < comps_.size(); ++j) {
      if (coef[j] != Complex{0.0, 0.0}) top = std::max(top, comps_[j].log_abs + std::log(std::abs(coef[j])));
    }
    double rate = 0.0;
    curve_.components(z + eta, probe_);
    std::vector<double> gx(comps_.size());
    for (std::size_t j = 0; j < comps_.size(); ++j) gx[j] = (probe_[j].log_abs - comps_[j].log_abs) / eta;
    curve_.components(z + Complex{0.0, eta}, probe_);
    for (std::size_t j = 0; j < comps_.size(); ++j) {
      if (coef[j] == Complex{0.0, 0.0} || comps_[j].is_zero()) continue;
      if (comps_[j].log_abs + std::log(std::abs(coef[j])) < top - kRelevantLogGap) continue;
      double gy = (probe_[j].log_abs - comps_[j].log_abs) / eta;
      if (std::isfinite(gx[j]) && std::isfinite(gy)) rate = std::max(rate, std::hypot(gx[j], gy));
    }
    return {v.is_zero() ? Complex{1.0, 0.0} : v.unit, rel, rate};
  }

  static double turn(const PhaseSample& a, const PhaseSample& b) { return std::arg(b.unit * std::conj(a.unit)); }

  double arc(double ta, const PhaseSample& a, double tb, const PhaseSample& b, int depth) {
    double tm = 0.5 * (ta + tb);
    PhaseSample m = eval(tm);
    if (near_zero_) return 0.0;
    double d1 = turn(a, m);
    double d2 = turn(m, b);
    double length = radius_ * (tb - ta);
    double rate = std::max({a.rate, m.rate, b.rate});
    bool resolved = std::abs(d1) < kPi / 4.0 && std::abs(d2) < kPi / 4.0 && length * rate <= 1.0;
    if (resolved) return d1 + d2;
    if (depth >= spec_.max_depth) {
      std::ostringstream msg;
      msg << "winding count did not resolve the phase on D(" << spec_.disc.center << ", " << radius_
          << ") at bisection depth " << depth;
      throw NumericError(msg.str());
    }
    double left = arc(ta, a, tm, m, depth + 1);
    if (near_zero_) return 0.0;
    return left + arc(tm, m, tb, b, depth + 1);
  }

  const Curve& curve_;
  const LinearForm& form_;
  const ContourSpec& spec_;
  double radius_;
  std::vector<LogComplex> comps_;
  std::vector<LogComplex> probe_;
  double min_modulus_ = kInf;
  bool near_zero_ = false;
};

}  // namespace

ZeroCount winding_count(const Curve& curve, const LinearForm& form, const ContourSpec& contour) {
  if (form.size() != curve.component_count()) {
    throw ValidationError("dimension mismatch: form has " + std::to_string(form.size()) +
                          " coefficients, curve has " + std::to_string(curve.component_count()) + " components");
  }
  if (contour.initial_nodes < 32) throw ValidationError("contour needs at least 32 initial nodes");
  if (contour.max_depth > 24 || contour.max_depth < 1) throw ValidationError("max_depth must lie in [1, 24]");
  if (!(contour.disc.radius > 0.0)) throw ValidationError("contour radius must be positive");

  double radius = contour.disc.radius;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    ContourWalker walker(curve, form, contour, radius);
    std::optional<double> total = walker.total_phase();
    if (total) {
      double turns = *total / kTwoPi;
      double rounded = std::round(turns);
      if (std::abs(turns - rounded) > 1e-6) {
        std::ostringstream msg;
        msg << "winding total " << turns << " turns is not an integer";
        throw NumericError(msg.str());
      }
      ZeroCount out;
      out.count = static_cast<long>(rounded);
      out.min_boundary_modulus = walker.min_modulus();
      if (attempt > 0) out.jiggled_radius = radius;
      return out;
    }
    radius *= 1.007;
  }
  std::ostringstream msg;
  msg << "zero-on-contour: P(F) vanishes near the circle of D(" << contour.disc.center << ", "
      << contour.disc.radius << ") after 5 radius adjustments";
  throw ZeroOnContourError(msg.str());
}

std::vector<SectorCount> sector_zero_scan(const Curve& curve, const DivisorSystem& system, double ray_angle,
                                          const std::vector<double>& radii, double disc_fraction,
                                          const ContourSpec& base) {
  if (!(disc_fraction > 0.0 && disc_fraction <= 0.25)) throw ValidationError("disc_fraction must lie in (0, 1/4]");
  if (system.ambient_dim != curve.ambient_dim()) throw ValidationError("system and curve dimensions differ");
  const std::size_t q = system.size();
  std::vector<SectorCount> table(radii.size() * q);
  parallel_for(table.size(), [&](std::size_t idx) {
    std::size_t ri = idx / q;
    std::size_t fi = idx % q;
    double r = radii[ri];
    if (!(r > 0.0)) throw ValidationError("sector radii must be positive");
    ContourSpec spec = base;
    spec.disc = Disc{std::polar(r, ray_angle), disc_fraction * r};
    ZeroCount zc = winding_count(curve, system.forms[fi], spec);
    table[idx] = SectorCount{fi, r, zc.count, zc.min_boundary_modulus, zc.jiggled_radius};
  });
  return table;
}

}  // namespace hcurve
