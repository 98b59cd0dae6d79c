#include "hcurve/potential.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "hcurve/kernels.hpp"

namespace hcurve {

namespace {

double default_step(double radius) { return std::clamp(radius * 1e-4, 1e-8, 1e-2); }

// Radial samples at r +- h and r +- h/2 for one batch of contour angles.
struct RadialBatch {
  std::vector<double> out_h, in_h, out_half, in_half;
  double max_abs = 0.0;
};

RadialBatch sample_batch(const Potential& u, const Disc& disc, double h, std::size_t count,
                         double theta0, double dtheta) {
  RadialBatch b;
  b.out_h.resize(count);
  b.in_h.resize(count);
  b.out_half.resize(count);
  b.in_half.resize(count);
  const double r = disc.radius;
  for (std::size_t k = 0; k < count; ++k) {
    Complex dir = std::polar(1.0, theta0 + dtheta * static_cast<double>(k));
    b.out_h[k] = u(disc.center + (r + h) * dir);
    b.in_h[k] = u(disc.center + (r - h) * dir);
    b.out_half[k] = u(disc.center + (r + 0.5 * h) * dir);
    b.in_half[k] = u(disc.center + (r - 0.5 * h) * dir);
    for (double v : {b.out_h[k], b.in_h[k], b.out_half[k], b.in_half[k]}) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "potential is not finite near the contour of D(" << disc.center << ", " << r << ")";
        throw NumericError(msg.str());
      }
      b.max_abs = std::max(b.max_abs, std::abs(v));
    }
  }
  return b;
}

}  // namespace

GreenResult green_disc_mass(const Potential& u, const Disc& disc, const GreenSettings& settings) {
  if (!(disc.radius > 0.0) || !std::isfinite(disc.radius)) {
    throw ValidationError("disc radius must be positive and finite");
  }
  if (settings.nodes < 64) throw ValidationError("Green quadrature needs at least 64 nodes");
  const double r = disc.radius;
  const double h = settings.step > 0.0 ? settings.step : default_step(r);
  if (!(h < r / 10.0)) throw ValidationError("radial step must satisfy 0 < h < radius/10");

  double sum_h = 0.0;     // sum of u(r+h) - u(r-h)
  double sum_half = 0.0;  // sum of u(r+h/2) - u(r-h/2)
  double max_abs = 0.0;
  std::size_t nodes = settings.nodes;

  auto accumulate = [&](std::size_t count, double theta0, double dtheta) {
    RadialBatch b = sample_batch(u, disc, h, count, theta0, dtheta);
    sum_h += kernels::difference_sum(b.out_h, b.in_h);
    sum_half += kernels::difference_sum(b.out_half, b.in_half);
    max_abs = std::max(max_abs, b.max_abs);
  };
  auto estimate = [&](std::size_t k) {
    // Richardson on the central difference: (4 D_{h/2} - D_h) / 3
    double d_h = sum_h / (2.0 * h);
    double d_half = sum_half / h;
    return (r / static_cast<double>(k)) * (4.0 * d_half - d_h) / 3.0;
  };

  accumulate(nodes, 0.0, kTwoPi / static_cast<double>(nodes));
  double previous = estimate(nodes);

  for (int level = 0; level < settings.max_doublings; ++level) {
    // New nodes interleave the old ones, so earlier samples are reused.
    const double dtheta = kTwoPi / static_cast<double>(nodes);
    accumulate(nodes, 0.5 * dtheta, dtheta);
    nodes *= 2;
    double current = estimate(nodes);
    // Cancellation noise of the difference quotient, summed along the contour.
    double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, max_abs) / h *
                 std::max(1.0, r);
    if (std::abs(current - previous) <= settings.rel_tol * std::abs(current) + tol) {
      GreenResult res;
      res.raw = current;
      res.tolerance = tol;
      res.mass = (current < 0.0 && std::abs(current) <= tol) ? 0.0 : current;
      res.nodes = nodes;
      res.step = h;
      return res;
    }
    previous = current;
  }
  std::ostringstream msg;
  msg << "Green-identity mass of D(" << disc.center << ", " << r << ") did not converge with "
      << nodes << " nodes (last estimate " << previous << ")";
  throw NumericError(msg.str());
}

double disc_mass_curve(const Curve& curve, const Disc& disc, std::size_t nodes, double step) {
  GreenSettings s;
  s.nodes = nodes;
  s.step = step;
  return green_disc_mass([&curve](Complex z) { return curve.u(z); }, disc, s).mass;
}

double characteristic_boundary(const Curve& curve, double r, std::size_t nodes) {
  if (!(r > 0.0)) throw ValidationError("characteristic radius must be positive");
  if (nodes < 8) throw ValidationError("characteristic_boundary needs at least 8 nodes");
  std::vector<double> values(nodes);
  for (std::size_t k = 0; k < nodes; ++k)
    values[k] = curve.u(std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(nodes)));
  return kernels::sum(values) / static_cast<double>(nodes) - curve.u(Complex{0.0, 0.0});
}

double characteristic_from_measure(const MeasureOracle& oracle, double r, std::size_t quad_points) {
  if (!(r > 0.0)) throw ValidationError("characteristic radius must be positive");
  using boost::math::quadrature::gauss_kronrod;
  const double lo = std::log(r * 1e-6);
  const double hi = std::log(r);
  const std::size_t panels = std::max<std::size_t>(1, quad_points / 15);
  auto integrand = [&](double s) {
    double m = oracle.mass(Disc{{0.0, 0.0}, std::exp(s)});
    if (!std::isfinite(m)) throw NumericError("disc mass is not finite inside the characteristic range");
    return m;
  };
  auto panel = [&](double a, double b, double* err) {
    return gauss_kronrod<double, 15>::integrate(integrand, a, b, 0, 0.0, err);
  };

  // Panel edges: an even split of [lo, hi] plus every jump of the integrand.
  std::vector<double> edges;
  for (std::size_t p = 0; p <= panels; ++p) {
    edges.push_back(p == panels ? hi : lo + (hi - lo) * static_cast<double>(p) / static_cast<double>(panels));
  }
  for (double j : oracle.radial_jumps()) {
    if (j > 0.0 && std::log(j) > lo && std::log(j) < hi) edges.push_back(std::log(j));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Global absolute tolerance: near t = r 1e-6 the masses are tiny and noisy,
  // so a per-panel relative test would subdivide forever.
  std::vector<std::pair<double, double>> ends;
  double coarse = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double e = 0.0;
    coarse += panel(edges[p], edges[p + 1], &e);
    ends.emplace_back(edges[p], edges[p + 1]);
  }
  const double abs_tol = 1e-7 * std::max(1.0, std::abs(coarse));
  double error = 0.0;
  std::function<double(double, double, int)> adapt = [&](double a, double b, int depth) {
    double e = 0.0;
    double v = panel(a, b, &e);
    if (e <= abs_tol * (b - a) / (hi - lo) || depth >= 12) {
      error += e;
      return v;
    }
    double mid = 0.5 * (a + b);
    return adapt(a, mid, depth + 1) + adapt(mid, b, depth + 1);
  };
  double total = 0.0;
  for (const auto& [a, b] : ends) total += adapt(a, b, 0);
  if (error > 1e-3 * std::max(1.0, std::abs(total))) {
    std::ostringstream msg;
    msg << "characteristic quadrature did not converge (error estimate " << error << ")";
    throw NumericError(msg.str());
  }
  return total;
}

AnnulusProfile annulus_profile(const MeasureOracle& oracle, double t, int m_first, int m_last) {
  if (!(t > 1.0)) throw ValidationError("annulus ratio t must exceed 1");
  if (m_last < m_first) throw ValidationError("empty annulus index range");
  AnnulusProfile prof;
  prof.t = t;
  prof.first_index = m_first;
  for (int m = m_first; m <= m_last; ++m) {
    double a = oracle.annulus_mass(std::pow(t, m), std::pow(t, m + 1));
    prof.masses.push_back(std::max(0.0, a));
  }
  return prof;
}

HarmonicMajorant::HarmonicMajorant(const Potential& u, const Disc& disc, std::size_t boundary_nodes)
    : disc_(disc) {
  if (boundary_nodes < 16) throw ValidationError("harmonic majorant needs at least 16 boundary nodes");
  values_.resize(boundary_nodes);
  cos_.resize(boundary_nodes);
  sin_.resize(boundary_nodes);
  for (std::size_t k = 0; k < boundary_nodes; ++k) {
    double t = kTwoPi * static_cast<double>(k) / static_cast<double>(boundary_nodes);
    cos_[k] = std::cos(t);
    sin_[k] = std::sin(t);
    values_[k] = u(disc.center + std::polar(disc.radius, t));
    if (!std::isfinite(values_[k])) throw NumericError("potential is not finite on the majorant boundary");
  }
}

double HarmonicMajorant::operator()(Complex z) const {
  Complex w = z - disc_.center;
  if (!(std::abs(w) < disc_.radius)) throw ValidationError("harmonic majorant evaluated outside its disc");
  return kernels::active().poisson_mean(values_.data(), cos_.data(), sin_.data(), values_.size(),
                                        disc_.radius, w.real(), w.imag());
}

HarmonicMajorant harmonic_majorant(const Curve& curve, const Disc& disc, std::size_t boundary_nodes) {
  return HarmonicMajorant([&curve](Complex z) { return curve.u(z); }, disc, boundary_nodes);
}

RescaledPotential::RescaledPotential(const Curve& curve, const DiscRecord& record,
                                     std::size_t boundary_nodes)
    : curve_(curve),
      record_(record),
      majorant_(harmonic_majorant(curve_, Disc{record.center, 2.0 * record.radius}, boundary_nodes)) {
  if (!(record.mass > 0.0)) throw ValidationError("rescaling needs a disc record with positive mass");
}

double RescaledPotential::operator()(Complex zeta) const {
  if (!(std::abs(zeta) < 2.0)) throw ValidationError("rescaled potential is defined on D(0,2) only");
  Complex z = record_.center + record_.radius * zeta;
  return (curve_.u(z) - majorant_(z)) / record_.mass;
}

double RescaledPotential::riesz_mass(double radius, const GreenSettings& settings) const {
  if (!(radius > 0.0 && radius < 2.0)) throw ValidationError("rescaled mass radius must lie in (0, 2)");
  return green_disc_mass([this](Complex zeta) { return (*this)(zeta); }, Disc{{0.0, 0.0}, radius},
                         settings)
      .mass;
}

}  // namespace hcurve
