#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "app.hpp"
#include "hcurve/julia.hpp"
#include "hcurve/kernels.hpp"
#include "hcurve/lowdisc.hpp"
#include "hcurve/parallel.hpp"
#include "hcurve/selection.hpp"
#include "hcurve/synthetic.hpp"
#include "output.hpp"
#include "version.hpp"

namespace hcurve::app {

using nlohmann::json;

namespace {

// ---- serialization helpers ----------------------------------------------------

json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

json record_json(const DiscRecord& r) {
  return {{"center", complex_to_json(r.center)},  {"radius", r.radius},
          {"mass", r.mass},                        {"doubling_ratio", r.doubling_ratio},
          {"relative_radius", real_json(r.relative_radius)}, {"governing_radius", r.governing_radius}};
}

CsvRow record_row(const DiscRecord& r) {
  return {format_real(r.center.real()), format_real(r.center.imag()), format_real(r.radius),
          format_real(r.mass),          format_real(r.doubling_ratio), format_real(r.relative_radius)};
}

const CsvRow kRecordHeader{"center_re", "center_im", "radius", "mass", "doubling_ratio", "relative_radius"};

json admissibility_json(const AdmissibilityReport& rep, const DivisorSystem& sys) {
  json forms = json::array();
  for (const auto& f : sys.forms) forms.push_back(form_to_json(f));
  json out = {{"admissible", rep.admissible},
              {"exact", rep.exact},
              {"subsets_checked", rep.subsets_checked},
              {"forms", forms},
              {"ambient_dim", sys.ambient_dim},
              {"order", sys.order},
              {"explanation", rep.explanation}};
  out["witness"] = rep.witness ? json(*rep.witness) : json(nullptr);
  if (rep.witness) out["witness_rank"] = rep.witness_rank;
  return out;
}

json profile_json(const AnnulusProfile& p) {
  json masses = json::array();
  for (double a : p.masses) masses.push_back(real_json(a));
  return {{"t", p.t}, {"m_first", p.first_index}, {"masses", masses}};
}

std::vector<CsvRow> profile_rows(const AnnulusProfile& p) {
  std::vector<CsvRow> rows;
  for (std::size_t k = 0; k < p.masses.size(); ++k) {
    int m = p.index(k);
    rows.push_back({std::to_string(m), format_real(std::pow(p.t, m)), format_real(std::pow(p.t, m + 1)),
                    format_real(p.masses[k])});
  }
  return rows;
}

json hit_json(const DiscHitRecord& h) {
  return {{"annulus_index", h.annulus_index},
          {"record", record_json(h.record)},
          {"direction", std::arg(h.record.center)},
          {"per_form_counts", h.per_form_counts},
          {"hit_forms", h.hit_forms}};
}

json julia_json(const JuliaReport& rep) {
  json dirs = json::array();
  for (std::size_t k = 0; k < rep.directions.size(); ++k) {
    json support = json::array();
    for (const auto& h : rep.supporting[k]) support.push_back(hit_json(h));
    dirs.push_back({{"angle", rep.directions[k]}, {"support_count", rep.supporting[k].size()}, {"supporting", support}});
  }
  return {{"directions", dirs},
          {"unbounded_profile", rep.unbounded_profile},
          {"hit_threshold", rep.hit_threshold},
          {"scope", "per-system result for the configured divisor system; not a universal statement"}};
}

json sector_json(const SectorReport& rep) {
  json table = json::array();
  for (const auto& row : rep.table) {
    json r = {{"form_index", row.form_index},
              {"radius", row.radius},
              {"count", row.count},
              {"min_boundary_modulus", row.min_boundary_modulus}};
    if (row.jiggled_radius) r["jiggled_radius"] = *row.jiggled_radius;
    table.push_back(r);
  }
  json stable = json::array();
  for (const auto& s : rep.stable_from) stable.push_back(s ? json(*s) : json(nullptr));
  return {{"angle_lo", rep.angle_lo}, {"angle_hi", rep.angle_hi}, {"bisector", rep.bisector},
          {"disc_fraction", rep.disc_fraction}, {"radii", rep.radii}, {"omitted", rep.omitted},
          {"hit", rep.hit}, {"counts", table}, {"prescan_radii", rep.prescan_radii},
          {"stable_from", stable}};
}

std::vector<CsvRow> sector_rows(std::size_t sector, const SectorReport& rep) {
  std::vector<CsvRow> rows;
  for (const auto& row : rep.table) {
    rows.push_back({std::to_string(sector), format_real(rep.bisector), std::to_string(row.form_index),
                    format_real(row.radius), std::to_string(row.count), format_real(row.min_boundary_modulus)});
  }
  return rows;
}

const CurveSpec& need_curve(const RunConfig& cfg) {
  if (!cfg.curve) throw ValidationError(cfg.source + ":1: /: this analysis needs a \"curve\"");
  return *cfg.curve;
}

const DivisorSystem& need_system(const RunConfig& cfg) {
  if (!cfg.system) throw ValidationError(cfg.source + ":1: /: this analysis needs a \"system\"");
  return *cfg.system;
}

GreenSettings green_of(const NumericKnobs& k) {
  GreenSettings g;
  g.nodes = k.green_nodes;
  return g;
}

RemplissageOptions remplissage_options(const NumericKnobs& k) {
  RemplissageOptions o;
  o.t = k.t;
  o.m_first = k.m_first;
  o.m_last = k.m_last;
  o.growth = k.growth;
  o.hit_threshold = k.hit_threshold;
  o.keep_fraction = k.keep_fraction;
  o.grid_density = k.grid_density;
  o.green = green_of(k);
  return o;
}

json bounds_json(const DivisorSystem& sys, std::size_t samples, std::uint64_t seed) {
  json out = json::array();
  for (const auto& subset : combinations(sys.size(), sys.order + 1)) {
    BoundEstimate b = bounding_constants(sys, subset, samples, seed);
    out.push_back({{"subset", subset}, {"lower", b.lower}, {"upper", b.upper}, {"samples", b.sample_count}});
  }
  return out;
}

// ---- commands -----------------------------------------------------------------

void cmd_admissible(const RunConfig& cfg, ReportWriter& w) {
  const DivisorSystem& sys = need_system(cfg);
  AdmissibilityReport rep = check_admissible(sys);
  json body = {{"report", admissibility_json(rep, sys)}};
  if (rep.admissible) body["bounding_constants"] = bounds_json(sys, cfg.numeric.bound_samples, cfg.seed);
  w.write_json("admissibility.json", "hcurve.admissibility/1", body);
}

void cmd_analyze(const RunConfig& cfg, ReportWriter& w) {
  const auto& k = cfg.numeric;
  Curve curve(need_curve(cfg));
  CurveMeasure oracle(curve, green_of(k));

  std::vector<CsvRow> rows(k.radii.size());
  parallel_for(k.radii.size(), [&](std::size_t i) {
    double r = k.radii[i];
    double tb = characteristic_boundary(curve, r, k.boundary_nodes);
    double tm = characteristic_from_measure(oracle, r, k.quad_points);
    rows[i] = {format_real(r), format_real(tb), format_real(tm), format_real(std::abs(tb - tm)),
               format_real(0.02 * std::max(1.0, tb))};
  });
  w.write_csv("characteristic.csv", "hcurve.characteristic/1",
              {"r", "boundary_mean", "from_measure", "abs_difference", "tolerance"}, rows);

  UnboundedTest test = riesz_unbounded_test(oracle, k.t, k.m_first, k.m_last, k.growth);
  w.write_csv("annulus_profile.csv", "hcurve.annulus_profile/1", {"m", "inner", "outer", "annulus_mass"},
              profile_rows(test.profile));

  json body = {{"unbounded_test",
                {{"unbounded", test.unbounded},
                 {"leading_max", test.leading_max},
                 {"trailing_max", test.trailing_max},
                 {"growth", k.growth}}}};
  json subsets = json::array();
  if (cfg.system) {
    const DivisorSystem& sys = *cfg.system;
    double reach = *std::max_element(k.radii.begin(), k.radii.end());
    auto samples = quasi_random_disc_points(Disc{{0.0, 0.0}, reach}, k.deviation_samples, cfg.seed);
    for (const auto& subset : combinations(sys.size(), sys.order + 1)) {
      DeviationRange dev = deviation_scan(curve, sys, subset, samples);
      BoundEstimate b = bounding_constants(sys, subset, k.bound_samples, cfg.seed);
      bool within = dev.min >= std::log(b.lower) - 1e-9 && dev.max <= std::log(b.upper) + 1e-9;
      subsets.push_back({{"subset", subset},
                         {"deviation_min", dev.min},
                         {"deviation_max", dev.max},
                         {"log_lower_bound", std::log(b.lower)},
                         {"log_upper_bound", std::log(b.upper)},
                         {"within_sampled_bounds", within}});
    }
    body["sample_disc_radius"] = reach;
    body["sample_count"] = samples.size();
  }
  body["subsets"] = subsets;
  w.write_json("deviation.json", "hcurve.deviation/1", body);
}

void cmd_remplissage(const RunConfig& cfg, ReportWriter& w) {
  const auto& k = cfg.numeric;
  Curve curve(need_curve(cfg));
  const DivisorSystem& sys = need_system(cfg);
  RemplissageResult res = remplissage_search(curve, sys, remplissage_options(k));

  std::vector<CsvRow> rows(res.records.size());
  parallel_for(res.records.size(), [&](std::size_t i) {
    const DiscHitRecord& h = res.records[i];
    RescaledPotential rescaled(curve, h.record, k.majorant_nodes);
    double worst = -kInf;
    const std::size_t g = k.grid_points;
    for (std::size_t a = 0; a < g; ++a) {
      for (std::size_t b = 0; b < g; ++b) {
        Complex zeta{-1.9 + 3.8 * a / (g - 1), -1.9 + 3.8 * b / (g - 1)};
        if (std::abs(zeta) < 1.9) worst = std::max(worst, rescaled(zeta));
      }
    }
    CsvRow row{std::to_string(h.annulus_index)};
    for (auto& c : record_row(h.record)) row.push_back(c);
    row.push_back(format_real(std::arg(h.record.center)));
    std::string hits;
    for (std::size_t j : h.hit_forms) hits += (hits.empty() ? "" : ";") + std::to_string(j);
    row.push_back(hits);
    std::string counts;
    for (long c : h.per_form_counts) counts += (counts.empty() ? "" : ";") + std::to_string(c);
    row.push_back(counts);
    row.push_back(format_real(worst));
    row.push_back(format_real(rescaled.riesz_mass(1.9, green_of(k))));
    rows[i] = std::move(row);
  });
  CsvRow header{"annulus_index"};
  for (const auto& c : kRecordHeader) header.push_back(c);
  for (const char* c : {"direction", "hit_forms", "per_form_counts", "rescaled_max", "rescaled_riesz_mass"})
    header.push_back(c);
  w.write_csv("disc_hits.csv", "hcurve.disc_hits/1", header, rows);

  json body = {{"hypothesis_holds", res.hypothesis_holds},
               {"hypothesis_message", res.hypothesis_message},
               {"admissibility", admissibility_json(res.admissibility, sys)},
               {"candidates", res.candidates},
               {"retained", res.records.size()}};
  if (res.hypothesis_holds) {
    body["profile"] = profile_json(res.unbounded.profile);
    JuliaReport rep = julia_directions(res.records, k.cluster_tol, 3, 3, k.hit_threshold);
    rep.unbounded_profile = res.unbounded.unbounded;
    body["julia"] = julia_json(rep);
  } else {
    body["julia"] = nullptr;
  }
  w.write_json("julia_report.json", "hcurve.julia_report/1", body);
}

std::optional<std::size_t> find_form(const DivisorSystem& sys, const std::vector<double>& coeffs) {
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (sys.forms[j].size() != coeffs.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      same = same && sys.forms[j].coefficients()[i] == Complex{coeffs[i], 0.0};
    if (same) return j;
  }
  return std::nullopt;
}

void cmd_verify_example(const RunConfig& cfg, ReportWriter& w) {
  const auto& k = cfg.numeric;
  const CurveSpec& spec = need_curve(cfg);
  Curve curve(spec);
  const DivisorSystem& sys = need_system(cfg);

  json body;
  AdmissibilityReport adm = check_admissible(sys);
  body["admissibility"] = admissibility_json(adm, sys);

  const auto* sine = std::get_if<SineSymmetricFamily>(&spec.family);
  json sym = json::object();
  int order = 0;
  if (sine) {
    order = sine->order;
    auto pts = quasi_random_disc_points(Disc{{0.0, 0.0}, 30.0}, 64, cfg.seed);
    double worst = 0.0;
    for (Complex z : pts) worst = std::max(worst, symmetry_check(spec, z));
    sym = {{"applicable", true}, {"samples", pts.size()}, {"max_residual", worst}, {"passes", worst <= 1e-10}};
  } else {
    sym = {{"applicable", false}};
  }
  body["symmetry"] = sym;

  auto sectors = k.sectors.empty() ? example_sectors() : k.sectors;
  std::vector<SectorReport> reports;
  for (const auto& [lo, hi] : sectors)
    reports.push_back(sector_omission_report(curve, sys, lo, hi, k.sector_radii, k.disc_fraction));
  json sec = json::array();
  std::vector<CsvRow> rows;
  bool all_cover = true;
  for (std::size_t s = 0; s < reports.size(); ++s) {
    json j = sector_json(reports[s]);
    bool enough = reports[s].omitted.size() >= 2 * sys.order;
    all_cover = all_cover && enough;
    j["omits_at_least_2n"] = enough;
    sec.push_back(j);
    for (auto& r : sector_rows(s, reports[s])) rows.push_back(std::move(r));
  }
  body["sectors"] = sec;
  w.write_csv("sector_counts.csv", "hcurve.sector_counts/1",
              {"sector", "bisector", "form_index", "radius", "count", "min_boundary_modulus"}, rows);

  // The two omission lists stated for the example, when its forms are present.
  json claims = json::array();
  bool claims_hold = true;
  struct Claim {
    double lo, hi;
    std::vector<std::vector<double>> forms;
  };
  std::vector<Claim> stated{{0.0, kPi / 3.0, {{1, 0, 1}, {1, 0, 2}, {0, 1, 1}, {0, 1, 2}}},
                            {kPi / 4.0, 3.0 * kPi / 4.0, {{1, 0, 1}, {1, 0, 2}, {1, 1, 0}, {1, 2, 0}}}};
  if (sine && sine->order == 3) {
    for (const auto& c : stated) {
      std::vector<std::size_t> idx;
      bool present = true;
      for (const auto& f : c.forms) {
        auto j = find_form(sys, f);
        if (!j) present = false;
        else idx.push_back(*j);
      }
      if (!present) continue;
      SectorReport rep = sector_omission_report(curve, sys, c.lo, c.hi, k.sector_radii, k.disc_fraction);
      bool holds = true;
      for (std::size_t j : idx)
        holds = holds && std::find(rep.omitted.begin(), rep.omitted.end(), j) != rep.omitted.end();
      claims_hold = claims_hold && holds;
      claims.push_back({{"angle_lo", c.lo}, {"angle_hi", c.hi}, {"claimed_omitted", idx}, {"holds", holds}});
    }
  }
  body["stated_omissions"] = claims;

  json equiv = nullptr;
  bool equiv_ok = true;
  if (sine) {
    EquivarianceCheck eq = sector_equivariance(curve, sys, sectors.front().first, sectors.front().second,
                                               k.sector_radii, order, k.disc_fraction);
    equiv_ok = eq.counts_match && eq.verdicts_match;
    equiv = {{"sector", {sectors.front().first, sectors.front().second}},
             {"turn", kTwoPi / order},
             {"counts_match", eq.counts_match},
             {"verdicts_match", eq.verdicts_match},
             {"rotated", sector_json(eq.rotated)}};
  }
  body["equivariance"] = equiv;

  RemplissageResult res = remplissage_search(curve, sys, remplissage_options(k));
  if (res.hypothesis_holds) {
    JuliaReport rep = julia_directions(res.records, k.cluster_tol, 3, 3, k.hit_threshold);
    rep.unbounded_profile = res.unbounded.unbounded;
    body["julia"] = julia_json(rep);
  } else {
    body["julia"] = {{"hypothesis_message", res.hypothesis_message}};
  }

  bool sym_ok = !sine || sym["passes"].get<bool>();
  body["verdict"] = {{"admissible", adm.admissible},
                     {"symmetry", sym_ok},
                     {"every_sector_omits_2n", all_cover},
                     {"stated_omissions_hold", claims_hold},
                     {"equivariance", equiv_ok},
                     {"all_checks_pass", adm.admissible && sym_ok && all_cover && claims_hold && equiv_ok}};
  w.write_json("verify_example.json", "hcurve.verify_example/1", body);
}

std::vector<NamedMeasure> lemma_measures(const RunConfig& cfg) {
  if (!cfg.measures.empty()) return cfg.measures;
  std::vector<Atom> atoms;
  for (int j = 0; j <= 8; ++j) atoms.push_back({Complex{std::pow(4.0, j), 0.0}, std::pow(2.0, j)});
  return {{"atoms_geometric", "atomic", std::make_shared<AtomicMeasure>(atoms), true},
          {"uniform_unit_disc", "lebesgue", std::make_shared<UniformDensity>(1.0, Disc{{0.0, 0.0}, 1.0}), true},
          {"inverse_square_cut", "inverse_square", std::make_shared<InverseSquareDensity>(1.0), false}};
}

json cover_json(const DiscRecord& rec) {
  auto discs = cover_double_disc(rec.center, rec.governing_radius);
  return {{"disc_count", discs.size()}, {"limit", kCoverLimit}, {"verified_points", 10000}};
}

void cmd_lemma_demo(const RunConfig& cfg, ReportWriter& w) {
  const auto& k = cfg.numeric;
  json measures = json::array();
  std::vector<CsvRow> rows;
  for (const auto& m : lemma_measures(cfg)) {
    DiscSequence seq = select_disc_sequence(*m.oracle, k.schedule, k.grid_density);
    json recs = json::array();
    for (std::size_t i = 0; i < seq.records.size(); ++i) {
      const DiscRecord& r = seq.records[i];
      json j = record_json(r);
      j["central_mass"] = seq.central_masses[i];
      j["certificate"] = {{"doubling_ok", r.doubling_ratio <= kDoublingBound},
                          {"half_central_ok", r.mass >= 0.5 * seq.central_masses[i] * (1.0 - 1e-3)}};
      if (std::abs(r.center) < r.governing_radius) j["cover"] = cover_json(r);
      recs.push_back(j);
      CsvRow row{m.name, format_real(r.governing_radius)};
      for (auto& c : record_row(r)) row.push_back(c);
      row.push_back(format_real(seq.central_masses[i]));
      rows.push_back(std::move(row));
    }
    json entry = {{"name", m.name}, {"density", m.tag}, {"records", recs}, {"finite_measure", seq.finite_measure},
                  {"central_masses", seq.central_masses}};
    entry["plateau_index"] = seq.plateau_index ? json(*seq.plateau_index) : json(nullptr);
    measures.push_back(entry);
  }

  // Randomized mixtures: one select_disc per oracle at the largest R of the schedule.
  json synthetic = json::array();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < k.synthetic_count; ++i) {
    std::string desc;
    MeasurePtr mix = synthetic_mixture(cfg.seed, i, &desc);
    SelectionParams p;
    p.R = k.schedule.back();
    p.grid_density = k.grid_density;
    double central = mix->mass(Disc{{0.0, 0.0}, p.R / 4.0});
    json entry = {{"index", i}, {"description", desc}, {"central_mass", central}};
    try {
      DiscRecord r = select_disc(*mix, p);
      bool ok = r.doubling_ratio <= kDoublingBound && r.mass >= 0.5 * central * (1.0 - 1e-3);
      passed += ok ? 1 : 0;
      entry["record"] = record_json(r);
      entry["certified"] = ok;
    } catch (const NumericError& e) {
      entry["record"] = nullptr;
      entry["certified"] = false;
      entry["error"] = e.what();
    }
    synthetic.push_back(entry);
  }

  // Covering constant on seeded (a, R) pairs.
  KroneckerSequence seq(3, cfg.seed);
  json covers = json::array();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < k.cover_pairs; ++i) {
    double u[3];
    seq.next(u);
    double R = std::exp(std::log(0.1) + u[0] * std::log(1e5));
    Complex a = std::polar(R * std::sqrt(u[1]) * 0.999, kTwoPi * u[2]);
    auto discs = cover_double_disc(a, R, kCoverLimit, 10000, cfg.seed + i);
    worst = std::max(worst, discs.size());
    covers.push_back({{"a", complex_to_json(a)}, {"R", R}, {"disc_count", discs.size()}});
  }

  CsvRow header{"measure", "R"};
  for (const auto& c : kRecordHeader) header.push_back(c);
  header.push_back("central_mass");
  w.write_csv("disc_records.csv", "hcurve.disc_records/1", header, rows);
  w.write_json("lemma_demo.json", "hcurve.lemma_demo/1",
               {{"doubling_bound", kDoublingBound},
                {"measures", measures},
                {"synthetic", {{"count", k.synthetic_count}, {"certified", passed}, {"runs", synthetic}}},
                {"covering", {{"pairs", covers}, {"max_disc_count", worst}, {"limit", kCoverLimit}}}});
}

void cmd_counterexample(const RunConfig& cfg, ReportWriter& w) {
  const auto& k = cfg.numeric;
  MeasurePtr oracle = std::make_shared<InverseSquareDensity>(0.0);
  std::string name = "inverse_square";
  for (const auto& m : cfg.measures) {
    if (m.tag == "inverse_square") {
      oracle = m.oracle;
      name = m.name;
      break;
    }
  }
  UnboundedTest test = riesz_unbounded_test(*oracle, k.t, k.m_first, k.m_last, k.growth);
  const double expected = kTwoPi * std::log(k.t);
  double worst_dev = 0.0;
  for (double a : test.profile.masses) worst_dev = std::max(worst_dev, std::abs(a - expected));
  w.write_csv("annulus_profile.csv", "hcurve.annulus_profile/1", {"m", "inner", "outer", "annulus_mass"},
              profile_rows(test.profile));

  // Discs with r <= |a|/10 carry at most pi rho^2 / (1 - rho)^2, rho = r/|a|.
  KroneckerSequence seq(3, cfg.seed);
  std::vector<CsvRow> rows;
  double max_mass = 0.0;
  bool within = true;
  for (std::size_t i = 0; i < k.disc_samples; ++i) {
    double u[3];
    seq.next(u);
    double mod = std::exp(u[0] * std::log(1e4));
    double rho = 0.1 * std::max(u[1], 1e-6);
    Disc d{std::polar(mod, kTwoPi * u[2]), rho * mod};
    double mass = oracle->mass(d);
    double bound = kPi * rho * rho / ((1.0 - rho) * (1.0 - rho));
    max_mass = std::max(max_mass, mass);
    within = within && mass <= bound * (1.0 + 1e-9) && mass <= 0.04;
    rows.push_back({format_real(d.center.real()), format_real(d.center.imag()), format_real(d.radius),
                    format_real(rho), format_real(mass), format_real(bound)});
  }
  w.write_csv("disc_masses.csv", "hcurve.disc_masses/1",
              {"center_re", "center_im", "radius", "relative_radius", "mass", "bound"}, rows);

  // Annulus selection still returns discs, but their relative radius does not shrink.
  json annulus = json::array();
  for (int m = k.m_first; m <= k.m_last; m += std::max(1, (k.m_last - k.m_first) / 4)) {
    try {
      DiscRecord r = select_disc_annulus(*oracle, k.t, m, CoverRule{}, k.grid_density);
      annulus.push_back({{"m", m}, {"record", record_json(r)}});
    } catch (const NumericError& e) {
      annulus.push_back({{"m", m}, {"error", e.what()}});
    }
  }

  w.write_json("counterexample.json", "hcurve.counterexample/1",
               {{"measure", name},
                {"expected_annulus_mass", expected},
                {"max_annulus_deviation", worst_dev},
                {"annulus_masses_constant", worst_dev <= 1e-6},
                {"unbounded_test",
                 {{"unbounded", test.unbounded},
                  {"leading_max", test.leading_max},
                  {"trailing_max", test.trailing_max}}},
                {"sampled_discs", k.disc_samples},
                {"max_sampled_mass", max_mass},
                {"sampled_discs_within_bound", within},
                {"mass_limit", 0.04},
                {"annulus_selection", annulus}});
}

}  // namespace

int execute(const Invocation& inv, std::ostream& log) {
  try {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg = load_config(inv.config_path);
    Analysis analysis;
    if (inv.analysis) {
      if (cfg.analysis && *cfg.analysis != *inv.analysis) {
        throw ValidationError(cfg.source + ": /analysis: config is for \"" + analysis_name(*cfg.analysis) +
                              "\" but the command is \"" + analysis_name(*inv.analysis) + "\"");
      }
      analysis = *inv.analysis;
    } else {
      if (!cfg.analysis) throw ValidationError(cfg.source + ":1: /: missing required field \"analysis\"");
      analysis = *cfg.analysis;
    }
    if (inv.seed) cfg.seed = *inv.seed;
    if (inv.jobs) set_max_jobs(*inv.jobs);
    std::string out_dir = inv.output_dir ? *inv.output_dir : cfg.output_dir.value_or("hcurve-out");

    ReportWriter w(out_dir, analysis_name(analysis), cfg.echo, cfg.seed);
    switch (analysis) {
      case Analysis::admissible: cmd_admissible(cfg, w); break;
      case Analysis::analyze: cmd_analyze(cfg, w); break;
      case Analysis::remplissage: cmd_remplissage(cfg, w); break;
      case Analysis::verify_example: cmd_verify_example(cfg, w); break;
      case Analysis::lemma_demo: cmd_lemma_demo(cfg, w); break;
      case Analysis::counterexample: cmd_counterexample(cfg, w); break;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    w.write_manifest(secs);
    log << analysis_name(analysis) << ": wrote " << w.dir().string() << "/manifest.json ("
        << kernels::isa_name(kernels::active().isa) << " kernels)\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ZeroOnContourError& e) {
    log << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericError& e) {
    log << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical value-distribution toolkit for holomorphic curves", "hcurve"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Invocation inv;
  std::size_t jobs = 0;
  std::uint64_t seed = 0;
  std::string output;

  struct Entry {
    const char* name;
    std::optional<Analysis> analysis;
    const char* help;
  };
  const Entry entries[] = {
      {"admissible", Analysis::admissible, "Exact admissibility of a divisor system"},
      {"analyze", Analysis::analyze, "Characteristic two ways, annulus profile, deviation scan"},
      {"remplissage", Analysis::remplissage, "Circles-de-remplissage search and Julia directions"},
      {"verify-example", Analysis::verify_example, "End-to-end check of the sine-curve example"},
      {"lemma-demo", Analysis::lemma_demo, "Disc sequences and covering certificates on synthetic measures"},
      {"counterexample", Analysis::counterexample, "Annulus profile and disc masses of dx dy/(x^2+y^2)"},
      {"run", std::nullopt, "Run the analysis named in the config"},
  };
  std::vector<std::pair<CLI::App*, std::optional<Analysis>>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config,-c", inv.config_path, "JSON config path")->required();
    sub->add_option("--output,-o", output, "Output directory (overrides output_dir)");
    sub->add_option("--jobs,-j", jobs, "Worker cap (0 = hardware concurrency)");
    sub->add_option("--seed", seed, "Seed (overrides the config)");
    subs.emplace_back(sub, e.analysis);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  for (const auto& [sub, analysis] : subs) {
    if (!sub->parsed()) continue;
    inv.analysis = analysis;
    if (sub->count("--output")) inv.output_dir = output;
    if (sub->count("--jobs")) inv.jobs = jobs;
    if (sub->count("--seed")) inv.seed = seed;
  }
  return execute(inv, err);
}

}  // namespace hcurve::app
