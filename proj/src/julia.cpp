#include "hcurve/julia.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hcurve/parallel.hpp"

namespace hcurve {

UnboundedTest riesz_unbounded_test(const MeasureOracle& oracle, double t, int m_first, int m_last, double growth) {
  if (!(t > 1.0)) throw ValidationError("annulus ratio t must exceed 1");
  if (m_last - m_first + 1 < 3) throw ValidationError("the m range needs at least 3 annuli");
  if (!(growth >= 1.0)) throw ValidationError("growth factor must be >= 1");
  UnboundedTest out;
  out.profile = annulus_profile(oracle, t, m_first, m_last);
  const auto& a = out.profile.masses;
  const std::size_t third = std::max<std::size_t>(1, a.size() / 3);
  out.leading_max = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(third));
  out.trailing_max = *std::max_element(a.end() - static_cast<std::ptrdiff_t>(third), a.end());
  out.unbounded = out.trailing_max > 0.0 && out.trailing_max > growth * out.leading_max;
  return out;
}

RemplissageResult remplissage_search(const Curve& curve, const DivisorSystem& system,
                                     const RemplissageOptions& options) {
  if (system.ambient_dim != curve.ambient_dim()) throw ValidationError("system and curve dimensions differ");
  if (options.hit_threshold < 1) throw ValidationError("hit_threshold must be >= 1");

  RemplissageResult out;
  out.admissibility = check_admissible(system);
  if (!out.admissibility.admissible) {
    out.hypothesis_message = "hypothesis-fails: system is not admissible (" + out.admissibility.explanation + ")";
    return out;
  }
  CurveMeasure oracle(curve, options.green);
  out.unbounded = riesz_unbounded_test(oracle, options.t, options.m_first, options.m_last, options.growth);
  if (!out.unbounded.unbounded) {
    std::ostringstream msg;
    msg << "hypothesis-fails: annulus profile does not grow (max " << out.unbounded.trailing_max
        << " over the last third vs " << out.unbounded.leading_max << " over the first)";
    out.hypothesis_message = msg.str();
    return out;
  }
  out.hypothesis_holds = true;

  std::vector<int> qualifying;
  const auto& profile = out.unbounded.profile;
  for (std::size_t k = 0; k < profile.masses.size(); ++k)
    if (profile.masses[k] >= options.min_annulus_mass) qualifying.push_back(profile.index(k));

  const std::size_t q = system.size();
  const std::size_t needed = q > 2 * system.order ? q - 2 * system.order : 0;
  std::vector<std::vector<DiscHitRecord>> per_annulus(qualifying.size());
  parallel_for(qualifying.size(), [&](std::size_t idx) {
    const int m = qualifying[idx];
    auto discs = select_discs_annulus(oracle, options.t, m, options.rule, options.keep_fraction, options.grid_density);
    for (const auto& rec : discs) {
      DiscHitRecord hit;
      hit.record = rec;
      hit.annulus_index = m;
      ContourSpec spec = options.contour;
      spec.disc = rec.disc();
      for (std::size_t j = 0; j < q; ++j) {
        long c = winding_count(curve, system.forms[j], spec).count;
        hit.per_form_counts.push_back(c);
        if (c >= options.hit_threshold) hit.hit_forms.push_back(j);
      }
      per_annulus[idx].push_back(std::move(hit));
    }
  });

  for (auto& group : per_annulus) {
    for (auto& rec : group) {
      ++out.candidates;
      if (rec.hit_forms.size() >= needed) out.records.push_back(std::move(rec));
    }
  }
  for (const auto& rec : out.records) {
    if (q - rec.hit_forms.size() > 2 * system.order) throw NumericError("internal: record violates the 2n rule");
  }
  return out;
}

namespace {

double wrap_positive(double a) {
  double w = std::fmod(a, kTwoPi);
  return w < 0.0 ? w + kTwoPi : w;
}

double circular_mean(const std::vector<double>& angles) {
  double s = 0.0, c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return wrap_positive(std::atan2(s, c));
}

}  // namespace

JuliaReport julia_directions(const std::vector<DiscHitRecord>& records, double cluster_tol, std::size_t min_support,
                             std::size_t min_annuli, long hit_threshold) {
  if (!(cluster_tol > 0.0 && cluster_tol < kPi)) throw ValidationError("cluster_tol must lie in (0, pi)");
  JuliaReport report;
  report.hit_threshold = hit_threshold;

  struct Item {
    double angle;
    std::size_t index;
  };
  std::vector<Item> items;
  for (std::size_t k = 0; k < records.size(); ++k) {
    Complex c = records[k].record.center;
    if (std::abs(c) == 0.0) continue;
    items.push_back({wrap_positive(std::arg(c)), k});
  }
  if (items.empty()) return report;
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.index < b.index);
  });

  // Cut the circle at every gap wider than the tolerance.
  const std::size_t n = items.size();
  std::vector<std::size_t> cuts;
  for (std::size_t k = 0; k < n; ++k) {
    double next = (k + 1 < n) ? items[k + 1].angle : items[0].angle + kTwoPi;
    if (next - items[k].angle > cluster_tol) cuts.push_back(k);
  }
  std::vector<std::vector<std::size_t>> clusters;
  if (cuts.empty()) {
    clusters.emplace_back();
    for (std::size_t k = 0; k < n; ++k) clusters.back().push_back(k);
  } else {
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      std::size_t start = (cuts[c] + 1) % n;
      std::size_t stop = cuts[(c + 1) % cuts.size()];
      std::vector<std::size_t> members;
      for (std::size_t k = start;; k = (k + 1) % n) {
        members.push_back(k);
        if (k == stop) break;
      }
      clusters.push_back(std::move(members));
    }
  }

  struct Found {
    double direction;
    std::vector<DiscHitRecord> support;
  };
  std::vector<Found> found;
  for (const auto& members : clusters) {
    std::vector<double> angles;
    for (std::size_t k : members) angles.push_back(items[k].angle);
    double mean = circular_mean(angles);
    std::vector<DiscHitRecord> support;
    std::set<int> annuli;
    for (std::size_t k : members) {
      if (std::abs(angle_diff(items[k].angle, mean)) <= cluster_tol) {
        support.push_back(records[items[k].index]);
        annuli.insert(records[items[k].index].annulus_index);
      }
    }
    if (support.size() >= min_support && annuli.size() >= min_annuli) found.push_back({mean, std::move(support)});
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.direction < b.direction; });
  for (auto& f : found) {
    report.directions.push_back(f.direction);
    report.supporting.push_back(std::move(f.support));
  }
  return report;
}

SectorReport sector_omission_report(const Curve& curve, const DivisorSystem& system, double angle_lo,
                                    double angle_hi, const std::vector<double>& radii, double disc_fraction,
                                    const ContourSpec& base) {
  if (!(angle_hi - angle_lo > 0.2)) throw ValidationError("sector width must exceed 0.2 rad");
  if (radii.empty()) throw ValidationError("sector report needs at least one radius");
  SectorReport rep;
  rep.angle_lo = angle_lo;
  rep.angle_hi = angle_hi;
  rep.bisector = 0.5 * (angle_lo + angle_hi);
  rep.disc_fraction = disc_fraction;
  rep.radii = radii;
  rep.table = sector_zero_scan(curve, system, rep.bisector, radii, disc_fraction, base);

  const std::size_t q = system.size();
  std::vector<bool> zero(q, true);
  for (const auto& row : rep.table)
    if (row.count != 0) zero[row.form_index] = false;
  for (std::size_t j = 0; j < q; ++j) (zero[j] ? rep.omitted : rep.hit).push_back(j);

  const double top = *std::max_element(radii.begin(), radii.end());
  for (double r = 1.0; r < top; r *= 1.25) rep.prescan_radii.push_back(r);
  rep.prescan_radii.push_back(top);
  auto pre = sector_zero_scan(curve, system, rep.bisector, rep.prescan_radii, disc_fraction, base);
  rep.stable_from.assign(q, std::nullopt);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t k = rep.prescan_radii.size(); k-- > 0;) {
      if (pre[k * q + j].count != 0) break;
      rep.stable_from[j] = rep.prescan_radii[k];
    }
  }
  return rep;
}

EquivarianceCheck sector_equivariance(const Curve& curve, const DivisorSystem& system, double angle_lo,
                                      double angle_hi, const std::vector<double>& radii, int order,
                                      double disc_fraction) {
  if (order < 2) throw ValidationError("rotation order must be >= 2");
  EquivarianceCheck out;
  out.original = sector_omission_report(curve, system, angle_lo, angle_hi, radii, disc_fraction);
  std::vector<LinearForm> shifted;
  for (const auto& f : system.forms) shifted.push_back(cyclic_shift(f, -1));
  DivisorSystem turned(std::move(shifted), system.order);
  const double step = kTwoPi / static_cast<double>(order);
  out.rotated = sector_omission_report(curve, turned, angle_lo + step, angle_hi + step, radii, disc_fraction);
  out.counts_match = out.original.table.size() == out.rotated.table.size();
  for (std::size_t k = 0; out.counts_match && k < out.original.table.size(); ++k)
    out.counts_match = out.original.table[k].count == out.rotated.table[k].count;
  out.verdicts_match = out.original.omitted == out.rotated.omitted;
  return out;
}

}  // namespace hcurve
