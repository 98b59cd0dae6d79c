#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcurve/common.hpp"
#include "hcurve/disc_record.hpp"
#include "hcurve/potential.hpp"

namespace hcurve {

/// Doubling constant certified for every selected disc.
inline constexpr double kDoublingBound = 200.0;
/// Maximum number of discs D(z, delta(z)) used to cover D(a, 2r).
inline constexpr std::size_t kCoverLimit = 100;

struct SelectionParams {
  double R = 8.0;
  std::size_t grid_density = 200;  // target candidate count, >= 100
  int refine_rounds = 3;
  Complex origin{0.0, 0.0};        // the scan covers D(origin, R)
  double doubling_bound = kDoublingBound;
};

/// Maximizes z -> mu(D(z, delta(z))), delta(z) = (R - |z - origin|)/4, over a
/// polar grid of D(origin, R), then certifies the winner:
///   mu(D(a, 2r)) <= doubling_bound * mu(D(a, r))  and  mu(D(a, r)) >= mu(D(origin, R/4)) / 2.
/// Failed certificates double the grid density up to refine_rounds times.
DiscRecord select_disc(const MeasureOracle& oracle, const SelectionParams& params);

/// Candidate centres of the polar scan (exposed for tests and diagnostics).
std::vector<Complex> polar_scan_grid(const SelectionParams& params, std::size_t density);

struct DiscSequence {
  std::vector<DiscRecord> records;
  std::vector<double> central_masses;  // mu(D(0, R/4)) per schedule entry evaluated
  bool finite_measure = false;         // central mass stopped growing
  std::optional<std::size_t> plateau_index;
};

/// One certified disc per R. Stops with finite_measure set as soon as
/// mu(D(0, R/4)) fails to grow along the schedule.
DiscSequence select_disc_sequence(const MeasureOracle& oracle, const std::vector<double>& schedule,
                                  std::size_t grid_density = 200, double growth_tol = 1e-6);

/// How an annulus {t^m <= |z| <= t^{m+1}} is split into patches: the angular
/// count is ceil(max(min_angular, sqrt_scale * sqrt(A_m))); radial layers are
/// geometric and chosen so that patches are roughly square.
struct CoverRule {
  std::size_t min_angular = 16;
  double sqrt_scale = 1.0;
  double min_annulus_mass = 1e-9;
};

struct AnnulusPatch {
  Disc disc;         // smallest disc containing the polar cell
  double angle = 0.0;
  double mass = 0.0;
};

struct AnnulusCover {
  double annulus_mass = 0.0;  // A_m
  std::size_t angular_count = 0;
  std::size_t radial_count = 0;
  std::vector<AnnulusPatch> patches;
};

/// Patch covering of the annulus with masses; throws when A_m is below the
/// rule's threshold or when a patch disc would reach the origin.
AnnulusCover annulus_cover(const MeasureOracle& oracle, double t, int m, const CoverRule& rule);

/// Heaviest patch D_m, then select_disc about D_m's centre with R' = 4 * radius(D_m).
/// The record satisfies relative_radius <= 8 * radius(D_m) / t^m.
DiscRecord select_disc_annulus(const MeasureOracle& oracle, double t, int m, const CoverRule& rule = {},
                               std::size_t grid_density = 200);

/// As select_disc_annulus, but runs the selection on every patch whose mass is
/// at least keep_fraction of the heaviest, after suppressing patches within
/// 1.5 angular cells of a heavier kept one. Symmetric measures then yield one
/// record per concentration direction instead of an arbitrary single winner.
std::vector<DiscRecord> select_discs_annulus(const MeasureOracle& oracle, double t, int m,
                                             const CoverRule& rule = {}, double keep_fraction = 0.5,
                                             std::size_t grid_density = 200);

/// At most `limit` discs D(z, delta(z)), z in D(a, 2r), r = delta(a), whose
/// union covers D(a, 2r); verified on `check_points` quasi-random samples.
std::vector<Disc> cover_double_disc(Complex a, double R, std::size_t limit = kCoverLimit,
                                    std::size_t check_points = 10000, std::uint64_t seed = 0);

}  // namespace hcurve
