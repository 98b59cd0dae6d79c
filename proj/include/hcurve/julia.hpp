#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcurve/curve.hpp"
#include "hcurve/potential.hpp"
#include "hcurve/projective.hpp"
#include "hcurve/selection.hpp"
#include "hcurve/zeros.hpp"

namespace hcurve {

struct UnboundedTest {
  bool unbounded = false;
  AnnulusProfile profile;
  double leading_max = 0.0;   // max A_m over the first third of the range
  double trailing_max = 0.0;  // max A_m over the last third
};

/// Unbounded iff max A_m over the last third of [m_first, m_last] exceeds
/// growth * max over the first third (and is positive).
UnboundedTest riesz_unbounded_test(const MeasureOracle& oracle, double t, int m_first, int m_last,
                                   double growth = 2.0);

struct DiscHitRecord {
  DiscRecord record;
  int annulus_index = 0;
  std::vector<long> per_form_counts;
  std::vector<std::size_t> hit_forms;  // count >= hit_threshold
};

struct RemplissageOptions {
  double t = 2.0;
  int m_first = 0;
  int m_last = 10;
  long hit_threshold = 1;
  double min_annulus_mass = 1.0;  // annuli lighter than this are skipped
  double growth = 2.0;
  double keep_fraction = 0.5;
  std::size_t grid_density = 200;
  CoverRule rule;
  ContourSpec contour;  // disc is overwritten per record
  GreenSettings green;
};

struct RemplissageResult {
  bool hypothesis_holds = false;
  std::string hypothesis_message;  // why the search did not run
  AdmissibilityReport admissibility;
  UnboundedTest unbounded;
  std::vector<DiscHitRecord> records;
  std::size_t candidates = 0;  // discs examined before the q - 2n filter
};

/// Selects discs in every annulus with A_m >= min_annulus_mass, counts the
/// zeros of each form inside them and keeps discs where at least q - 2n forms
/// are hit. An inadmissible system or a bounded profile is reported through
/// hypothesis_holds = false, not thrown.
RemplissageResult remplissage_search(const Curve& curve, const DivisorSystem& system,
                                     const RemplissageOptions& options = {});

struct JuliaReport {
  std::vector<double> directions;  // in [0, 2pi)
  std::vector<std::vector<DiscHitRecord>> supporting;
  bool unbounded_profile = false;
  long hit_threshold = 1;
};

/// Circular single-linkage clustering of arg(center). A cluster becomes a
/// direction (its circular mean) when at least min_support records lie within
/// cluster_tol of the mean, spread over at least min_annuli annulus indices.
JuliaReport julia_directions(const std::vector<DiscHitRecord>& records, double cluster_tol = 0.15,
                             std::size_t min_support = 3, std::size_t min_annuli = 3, long hit_threshold = 1);

struct SectorReport {
  double angle_lo = 0.0;
  double angle_hi = 0.0;
  double bisector = 0.0;
  double disc_fraction = 0.25;
  std::vector<double> radii;
  std::vector<SectorCount> table;
  std::vector<std::size_t> omitted;
  std::vector<std::size_t> hit;
  /// Per form: smallest pre-scan radius from which every count up to the
  /// largest tested radius is 0. Diagnostic only; verdicts use `radii`.
  std::vector<std::optional<double>> stable_from;
  std::vector<double> prescan_radii;
};

/// Zero counts along the bisector of (angle_lo, angle_hi); a form is omitted in
/// the sector (at the tested scales) when all its counts are 0.
SectorReport sector_omission_report(const Curve& curve, const DivisorSystem& system, double angle_lo,
                                    double angle_hi, const std::vector<double>& radii,
                                    double disc_fraction = 0.25, const ContourSpec& base = {});

struct EquivarianceCheck {
  SectorReport original;
  SectorReport rotated;  // sector turned by 2pi/order, forms shifted back
  bool counts_match = false;
  bool verdicts_match = false;
};

/// For a sine-symmetric curve F(eps z) is a coordinate rotation of F(z), so the
/// zeros of Q in the turned sector match those of the shifted form in the
/// original one. Compares both reports count for count.
EquivarianceCheck sector_equivariance(const Curve& curve, const DivisorSystem& system, double angle_lo,
                                      double angle_hi, const std::vector<double>& radii, int order = 3,
                                      double disc_fraction = 0.25);

}  // namespace hcurve
