#include "hcurve/selection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcurve/kernels.hpp"
#include "hcurve/lowdisc.hpp"
#include "hcurve/parallel.hpp"

namespace hcurve {

namespace {

// Rings stop once delta(z) < R / 64; beyond that the discs are too small to matter
// for the certificate and the ring count would grow without bound.
constexpr double kEdgeFraction = 1.0 / 16.0;

std::size_t grid_size(double kappa) {
  // Same recurrence as polar_scan_grid on the unit disc.
  std::size_t count = 1;
  double rho = 0.0;
  for (;;) {
    rho = 1.0 - (1.0 - rho) * (1.0 - kappa / 4.0);
    if (1.0 - rho < kEdgeFraction) break;
    double delta = (1.0 - rho) / 4.0;
    count += std::max<std::size_t>(6, static_cast<std::size_t>(std::ceil(kTwoPi * rho / (kappa * delta))));
  }
  return count;
}

double kappa_for(std::size_t density) {
  double lo = 0.02;
  double hi = 3.9;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (grid_size(mid) > density) lo = mid;
    else hi = mid;
  }
  return hi;
}

struct Candidate {
  Complex z;
  double mass;
};

double delta_of(const SelectionParams& p, Complex z) { return (p.R - std::abs(z - p.origin)) / 4.0; }

double candidate_mass(const MeasureOracle& oracle, const SelectionParams& p, Complex z) {
  double d = delta_of(p, z);
  if (!(d > 0.0)) return -kInf;
  return oracle.mass(Disc{z, d});
}

Candidate scan(const MeasureOracle& oracle, const SelectionParams& p, std::size_t density) {
  std::vector<Complex> grid = polar_scan_grid(p, density);
  std::vector<double> masses(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { masses[i] = candidate_mass(oracle, p, grid[i]); });
  // Strict improvement only: ties keep the candidate nearest the centre.
  Candidate best{grid.front(), masses.front()};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (masses[i] > best.mass * (1.0 + 1e-12) || (best.mass <= 0.0 && masses[i] > best.mass)) {
      best = {grid[i], masses[i]};
    }
  }
  // Compass search around the grid winner.
  double step = 0.25 * kappa_for(density) * std::max(delta_of(p, best.z), p.R * kEdgeFraction / 4.0);
  for (int halving = 0; halving < 6; ++halving) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int k = 0; k < 8; ++k) {
        Complex z = best.z + std::polar(step, kTwoPi * k / 8.0);
        if (!(std::abs(z - p.origin) < p.R)) continue;
        double m = candidate_mass(oracle, p, z);
        if (m > best.mass * (1.0 + 1e-9) && std::isfinite(m)) {
          best = {z, m};
          improved = true;
        }
      }
    }
    step *= 0.5;
  }
  return best;
}

}  // namespace

std::vector<Complex> polar_scan_grid(const SelectionParams& p, std::size_t density) {
  const double kappa = kappa_for(density);
  std::vector<Complex> grid{p.origin};
  double rho = 0.0;
  for (std::size_t ring = 0;; ++ring) {
    rho = p.R - (p.R - rho) * (1.0 - kappa / 4.0);
    if (p.R - rho < kEdgeFraction * p.R) break;
    double delta = (p.R - rho) / 4.0;
    auto n = std::max<std::size_t>(6, static_cast<std::size_t>(std::ceil(kTwoPi * rho / (kappa * delta))));
    // Alternate rings are rotated half a cell so neighbouring rings interleave.
    double offset = (ring % 2 == 1) ? 0.5 : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      grid.push_back(p.origin + std::polar(rho, kTwoPi * (static_cast<double>(k) + offset) / static_cast<double>(n)));
    }
  }
  return grid;
}

DiscRecord select_disc(const MeasureOracle& oracle, const SelectionParams& params) {
  if (!(params.R > 0.0) || !std::isfinite(params.R)) throw ValidationError("R must be positive and finite");
  if (params.grid_density < 100) throw ValidationError("grid_density must be >= 100");

  const double central = oracle.mass(Disc{params.origin, params.R / 4.0});
  if (!(central > 0.0)) throw ValidationError("zero central mass: mu(D(origin, R/4)) = 0");
  if (!std::isfinite(central)) throw ValidationError("central mass mu(D(origin, R/4)) is not finite");

  std::size_t density = params.grid_density;
  std::ostringstream failures;
  for (int round = 0; round <= params.refine_rounds; ++round, density *= 2) {
    Candidate best = scan(oracle, params, density);
    DiscRecord rec;
    rec.center = best.z;
    rec.radius = delta_of(params, best.z);
    rec.mass = oracle.mass(rec.disc());
    double doubled = oracle.mass(Disc{rec.center, 2.0 * rec.radius});
    rec.doubling_ratio = rec.mass > 0.0 ? doubled / rec.mass : kInf;
    rec.relative_radius = std::abs(rec.center) > 0.0 ? rec.radius / std::abs(rec.center) : kInf;
    rec.governing_radius = params.R;

    bool doubling_ok = std::isfinite(rec.doubling_ratio) && rec.doubling_ratio <= params.doubling_bound;
    bool mass_ok = std::isfinite(rec.mass) && rec.mass >= 0.5 * central * (1.0 - 1e-3);
    if (doubling_ok && mass_ok) return rec;
    failures << " [density " << density << ": ratio " << rec.doubling_ratio << ", mass " << rec.mass
             << " vs central " << central << "]";
  }
  throw NumericError("disc selection certificate failed after refinement:" + failures.str());
}

DiscSequence select_disc_sequence(const MeasureOracle& oracle, const std::vector<double>& schedule,
                                  std::size_t grid_density, double growth_tol) {
  if (schedule.empty()) throw ValidationError("R schedule is empty");
  for (std::size_t k = 1; k < schedule.size(); ++k)
    if (!(schedule[k] > schedule[k - 1])) throw ValidationError("R schedule must be increasing");

  DiscSequence seq;
  double previous = -1.0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double R = schedule[k];
    const double central = oracle.mass(Disc{{0.0, 0.0}, R / 4.0});
    seq.central_masses.push_back(central);
    if (previous > 0.0 && central <= previous * (1.0 + growth_tol)) {
      seq.finite_measure = true;
      seq.plateau_index = k;
      break;
    }
    if (central > 0.0) {
      SelectionParams p;
      p.R = R;
      p.grid_density = grid_density;
      seq.records.push_back(select_disc(oracle, p));
    }
    previous = central;
  }
  return seq;
}

AnnulusCover annulus_cover(const MeasureOracle& oracle, double t, int m, const CoverRule& rule) {
  if (!(t > 1.0)) throw ValidationError("annulus ratio t must exceed 1");
  const double inner = std::pow(t, m);
  AnnulusCover cover;
  cover.annulus_mass = oracle.annulus_mass(inner, inner * t);
  if (!std::isfinite(cover.annulus_mass)) throw ValidationError("annulus mass is not finite");
  if (!(cover.annulus_mass > rule.min_annulus_mass)) {
    std::ostringstream msg;
    msg << "annulus mass A_" << m << " = " << cover.annulus_mass << " is below the threshold";
    throw ValidationError(msg.str());
  }
  double n_ang = std::ceil(std::max(static_cast<double>(rule.min_angular), rule.sqrt_scale * std::sqrt(cover.annulus_mass)));
  cover.angular_count = static_cast<std::size_t>(std::min(n_ang, 4096.0));
  const double half_angle = kPi / static_cast<double>(cover.angular_count);
  cover.radial_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::log(t) / std::log1p(kTwoPi / static_cast<double>(cover.angular_count)))));
  const double ratio = std::pow(t, 1.0 / static_cast<double>(cover.radial_count));

  for (std::size_t layer = 0; layer < cover.radial_count; ++layer) {
    double r0 = inner * std::pow(ratio, static_cast<double>(layer));
    double r1 = r0 * ratio;
    // Centre on the bisector equidistant from the inner and outer corners.
    double rc = (r0 + r1) / (2.0 * std::cos(half_angle));
    double radius = std::abs(rc - std::polar(r0, half_angle));
    if (!(4.0 * radius < rc)) throw NumericError("annulus covering degenerate: patch discs reach the origin");
    for (std::size_t k = 0; k < cover.angular_count; ++k) {
      double phi = (static_cast<double>(k) + 0.5) * 2.0 * half_angle;
      cover.patches.push_back(AnnulusPatch{Disc{std::polar(rc, phi), radius}, phi, 0.0});
    }
  }
  parallel_for(cover.patches.size(), [&](std::size_t i) { cover.patches[i].mass = oracle.mass(cover.patches[i].disc); });
  return cover;
}

namespace {

DiscRecord select_in_patch(const MeasureOracle& oracle, const AnnulusPatch& patch, double inner,
                           std::size_t grid_density) {
  SelectionParams p;
  p.origin = patch.disc.center;
  p.R = 4.0 * patch.disc.radius;
  p.grid_density = grid_density;
  DiscRecord rec = select_disc(oracle, p);
  double envelope = 8.0 * patch.disc.radius / inner;
  if (!(rec.relative_radius <= envelope)) {
    std::ostringstream msg;
    msg << "annulus selection violated the shrink envelope: r/|a| = " << rec.relative_radius << " > " << envelope;
    throw NumericError(msg.str());
  }
  return rec;
}

}  // namespace

DiscRecord select_disc_annulus(const MeasureOracle& oracle, double t, int m, const CoverRule& rule,
                               std::size_t grid_density) {
  AnnulusCover cover = annulus_cover(oracle, t, m, rule);
  auto best = std::max_element(cover.patches.begin(), cover.patches.end(),
                               [](const AnnulusPatch& a, const AnnulusPatch& b) { return a.mass < b.mass; });
  return select_in_patch(oracle, *best, std::pow(t, m), grid_density);
}

std::vector<DiscRecord> select_discs_annulus(const MeasureOracle& oracle, double t, int m, const CoverRule& rule,
                                             double keep_fraction, std::size_t grid_density) {
  AnnulusCover cover = annulus_cover(oracle, t, m, rule);
  std::vector<std::size_t> order(cover.patches.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cover.patches[a].mass > cover.patches[b].mass;
  });
  const double top = cover.patches[order.front()].mass;
  const double cell = kTwoPi / static_cast<double>(cover.angular_count);
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const auto& patch = cover.patches[idx];
    if (!(patch.mass > 0.0) || patch.mass < keep_fraction * top) break;
    bool near_kept = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return std::abs(angle_diff(cover.patches[k].angle, patch.angle)) < 1.5 * cell;
    });
    if (!near_kept) kept.push_back(idx);
  }
  std::vector<DiscRecord> records(kept.size());
  const double inner = std::pow(t, m);
  parallel_for(kept.size(), [&](std::size_t i) {
    records[i] = select_in_patch(oracle, cover.patches[kept[i]], inner, grid_density);
  });
  return records;
}

std::vector<Disc> cover_double_disc(Complex a, double R, std::size_t limit, std::size_t check_points,
                                    std::uint64_t seed) {
  if (!(R > 0.0) || !(std::abs(a) < R)) throw ValidationError("cover_double_disc needs |a| < R");
  const double r = (R - std::abs(a)) / 4.0;
  const double big = 2.0 * r;
  auto delta = [R](Complex z) { return (R - std::abs(z)) / 4.0; };

  // Inside D(a, 2r) every delta(z) >= r/2, so a triangular lattice with covering
  // radius below r/2 suffices; lattice points outside are pulled back to the
  // boundary, which cannot increase their distance to any covered point.
  const double pitch = 0.98 * std::sqrt(3.0) / 2.0 * r;
  const double cover_radius = pitch / std::sqrt(3.0);
  const double reach = big + cover_radius;
  const double inset = big * (1.0 - 1e-9);
  const int span = static_cast<int>(std::ceil(reach / pitch)) + 2;
  std::vector<Disc> discs;
  for (int j = -span; j <= span; ++j) {
    for (int i = -span; i <= span; ++i) {
      Complex offset{pitch * (i + 0.5 * j), pitch * (std::sqrt(3.0) / 2.0) * j};
      double dist = std::abs(offset);
      if (!(dist < reach)) continue;
      if (dist >= inset) offset *= inset / dist;
      Complex z = a + offset;
      discs.push_back(Disc{z, delta(z)});
    }
  }
  if (discs.size() > limit) {
    throw NumericError("covering of D(a, 2r) needs " + std::to_string(discs.size()) + " discs, limit " +
                       std::to_string(limit));
  }

  std::vector<double> cx, cy, cr;
  for (const auto& d : discs) {
    cx.push_back(d.center.real());
    cy.push_back(d.center.imag());
    cr.push_back(d.radius);
  }
  const auto& k = kernels::active();
  for (Complex p : quasi_random_disc_points(Disc{a, big}, check_points, seed)) {
    if (!(k.cover_slack(cx.data(), cy.data(), cr.data(), cx.size(), p.real(), p.imag()) < 0.0)) {
      std::ostringstream msg;
      msg << "covering verification failed at " << p;
      throw NumericError(msg.str());
    }
  }
  return discs;
}

}  // namespace hcurve
