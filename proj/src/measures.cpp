#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "hcurve/kernels.hpp"
#include "hcurve/potential.hpp"

namespace hcurve {

double MeasureOracle::annulus_mass(double inner, double outer) const {
  double big = mass(Disc{{0.0, 0.0}, outer});
  double small = inner > 0.0 ? mass(Disc{{0.0, 0.0}, inner}) : 0.0;
  if (!std::isfinite(big) || !std::isfinite(small)) return kInf;
  return std::max(0.0, big - small);
}

// ---- curve ------------------------------------------------------------------

CurveMeasure::CurveMeasure(Curve curve, GreenSettings settings)
    : curve_(std::move(curve)), settings_(settings) {}

double CurveMeasure::mass(const Disc& disc) const {
  return green_disc_mass([this](Complex z) { return curve_.u(z); }, disc, settings_).mass;
}

// ---- inverse square -----------------------------------------------------------

InverseSquareDensity::InverseSquareDensity(double cutoff) : cutoff_(cutoff) {
  if (!(cutoff >= 0.0) || !std::isfinite(cutoff)) throw ValidationError("cutoff must be finite and >= 0");
}

double InverseSquareDensity::mass(const Disc& disc) const {
  const double dist = std::abs(disc.center);
  const double r = disc.radius;
  if (cutoff_ == 0.0 && dist <= r) return kInf;
  if (dist == 0.0) return r > cutoff_ ? kTwoPi * std::log(r / cutoff_) : 0.0;

  // Flux form of the radial potential: the field (M(s)/s) s_hat with M(s) the
  // mass inside |z| < s (shifted by a harmonic term when cutoff = 0) has
  // divergence 2 pi * density, so mu(D) = (1/2pi) * flux through the circle.
  auto flux_density = [&](double s) {
    double cum = cutoff_ > 0.0 ? std::log(std::max(s, cutoff_) / cutoff_) : std::log(s);
    return cum / s;
  };
  auto contribution = [&](double theta) {
    Complex n = std::polar(1.0, theta);
    Complex p = disc.center + r * n;
    double s = std::abs(p);
    double s_dot_n = (p.real() * n.real() + p.imag() * n.imag()) / s;
    return flux_density(s) * s_dot_n;
  };

  std::size_t nodes = 64;
  double acc = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) acc += contribution(kTwoPi * static_cast<double>(k) / nodes);
  double previous = acc * r * kTwoPi / static_cast<double>(nodes);
  for (int level = 0; level < 16; ++level) {
    const double dtheta = kTwoPi / static_cast<double>(nodes);
    for (std::size_t k = 0; k < nodes; ++k) acc += contribution(dtheta * (static_cast<double>(k) + 0.5));
    nodes *= 2;
    double current = acc * r * kTwoPi / static_cast<double>(nodes);
    if (level >= 2 && std::abs(current - previous) <= 1e-12 * std::max(1.0, std::abs(current))) {
      return std::max(0.0, current);
    }
    previous = current;
  }
  return std::max(0.0, previous);
}

double InverseSquareDensity::annulus_mass(double inner, double outer) const {
  double lo = std::max(inner, cutoff_);
  if (lo == 0.0) return kInf;
  return outer > lo ? kTwoPi * std::log(outer / lo) : 0.0;
}

// ---- uniform ------------------------------------------------------------------

namespace {

double lens_area(double r1, double r2, double d) {
  if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
  if (d >= r1 + r2) return 0.0;
  double rmin = std::min(r1, r2);
  if (d <= std::abs(r1 - r2)) return kPi * rmin * rmin;
  double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
  double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
  double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(0.0, k));
}

}  // namespace

UniformDensity::UniformDensity(double density, Disc support) : density_(density), support_(support) {
  if (!(density >= 0.0)) throw ValidationError("density must be >= 0");
}

double UniformDensity::mass(const Disc& disc) const {
  if (std::isinf(support_.radius)) return density_ * kPi * disc.radius * disc.radius;
  return density_ * lens_area(disc.radius, support_.radius, std::abs(disc.center - support_.center));
}

// ---- gaussian -----------------------------------------------------------------

GaussianBump::GaussianBump(Complex center, double total_mass, double sigma)
    : center_(center), total_(total_mass), sigma_(sigma) {
  if (!(sigma > 0.0) || !(total_mass >= 0.0)) throw ValidationError("gaussian bump needs sigma > 0, mass >= 0");
}

double GaussianBump::mass(const Disc& disc) const {
  const double d = std::abs(disc.center - center_);
  const double r = disc.radius;
  const double two_s2 = 2.0 * sigma_ * sigma_;
  const double reach = 40.0 * sigma_;
  // Circles |z - center| = s with s < r - d lie inside the disc entirely.
  double inner = 0.0;
  if (r > d) inner = -std::expm1(-(r - d) * (r - d) / two_s2);
  if (d == 0.0) return total_ * inner;
  const double lo = std::abs(r - d);
  const double hi = std::min(r + d, reach);
  if (lo >= hi) return total_ * inner;
  // Fraction of the circle of radius s inside the disc: phi(s)/pi.
  auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    double c = std::clamp((s * s + d * d - r * r) / (2.0 * s * d), -1.0, 1.0);
    return std::exp(-s * s / two_s2) * 2.0 * s / two_s2 * std::acos(c) / kPi;
  };
  double partial = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15, 1e-12);
  return total_ * (inner + partial);
}

// ---- atomic -------------------------------------------------------------------

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!(a.mass >= 0.0)) throw ValidationError("atom masses must be >= 0");
    xs_.push_back(a.point.real());
    ys_.push_back(a.point.imag());
    ws_.push_back(a.mass);
  }
}

double AtomicMeasure::mass(const Disc& disc) const {
  return kernels::active().weight_in_disc(xs_.data(), ys_.data(), ws_.data(), ws_.size(),
                                          disc.center.real(), disc.center.imag(), disc.radius);
}

std::vector<double> AtomicMeasure::radial_jumps() const {
  std::vector<double> out;
  for (const auto& a : atoms_) out.push_back(std::abs(a.point));
  return out;
}

double AtomicMeasure::total() const {
  double t = 0.0;
  for (double w : ws_) t += w;
  return t;
}

// ---- combinators --------------------------------------------------------------

MixtureMeasure::MixtureMeasure(std::vector<MeasurePtr> parts) : parts_(std::move(parts)) {
  for (const auto& p : parts_)
    if (!p) throw ValidationError("mixture component is null");
}

double MixtureMeasure::mass(const Disc& disc) const {
  double total = 0.0;
  for (const auto& p : parts_) total += p->mass(disc);
  return total;
}

std::vector<double> MixtureMeasure::radial_jumps() const {
  std::vector<double> out;
  for (const auto& p : parts_) {
    auto j = p->radial_jumps();
    out.insert(out.end(), j.begin(), j.end());
  }
  return out;
}

double MixtureMeasure::annulus_mass(double inner, double outer) const {
  double total = 0.0;
  for (const auto& p : parts_) total += p->annulus_mass(inner, outer);
  return total;
}

PushforwardMeasure::PushforwardMeasure(MeasurePtr inner, Complex scale)
    : inner_(std::move(inner)), scale_(scale) {
  if (!inner_ || std::abs(scale) == 0.0) throw ValidationError("pushforward needs a measure and nonzero scale");
}

double PushforwardMeasure::mass(const Disc& disc) const {
  return inner_->mass(Disc{disc.center / scale_, disc.radius / std::abs(scale_)});
}

std::vector<double> PushforwardMeasure::radial_jumps() const {
  auto out = inner_->radial_jumps();
  for (double& r : out) r *= std::abs(scale_);
  return out;
}

double PushforwardMeasure::annulus_mass(double inner, double outer) const {
  const double s = std::abs(scale_);
  return inner_->annulus_mass(inner / s, outer / s);
}

}  // namespace hcurve
