#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcurve/curve.hpp"
#include "hcurve/potential.hpp"
#include "hcurve/projective.hpp"

namespace hcurve {

enum class Analysis { admissible, analyze, remplissage, verify_example, lemma_demo, counterexample };

std::string analysis_name(Analysis a);
std::optional<Analysis> analysis_from_name(const std::string& name);

/// Numeric knobs shared by all commands. Ranges are enforced by parse_config
/// and documented in docs/config.md.
struct NumericKnobs {
  double t = 2.0;
  int m_first = 0;
  int m_last = 10;
  double growth = 2.0;
  std::size_t grid_density = 200;
  std::size_t green_nodes = 64;
  std::size_t boundary_nodes = 4096;
  std::size_t quad_points = 64;
  std::size_t majorant_nodes = 2048;
  std::vector<double> radii{1.0, 2.0, 5.0, 10.0, 20.0};
  std::vector<double> sector_radii{12.0, 16.0, 20.0, 24.0};
  std::vector<std::pair<double, double>> sectors;  // empty: the six sectors of the example
  double disc_fraction = 0.25;
  long hit_threshold = 1;
  double cluster_tol = 0.15;
  double keep_fraction = 0.5;
  std::size_t bound_samples = 4096;
  std::size_t deviation_samples = 256;
  std::vector<double> schedule{8.0, 16.0, 32.0, 64.0};
  std::size_t disc_samples = 200;
  std::size_t cover_pairs = 20;
  std::size_t synthetic_count = 10;
  std::size_t grid_points = 41;
};

struct NamedMeasure {
  std::string name;
  std::string tag;
  MeasurePtr oracle;
  bool finite = false;  // total mass known to be finite
};

struct RunConfig {
  std::optional<Analysis> analysis;
  std::optional<CurveSpec> curve;
  std::optional<DivisorSystem> system;
  std::vector<NamedMeasure> measures;
  NumericKnobs numeric;
  std::uint64_t seed = 0;
  std::optional<std::string> output_dir;
  nlohmann::json echo;  // the parsed document, embedded in every report
  std::string source;
};

/// Parses a JSON config. Errors are ValidationError with messages of the form
/// "<source>:<line>: <json pointer>: <reason>".
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

/// Value helpers shared with the report writers.
nlohmann::json complex_to_json(Complex z);
nlohmann::json form_to_json(const LinearForm& form);

/// The six sectors used by the example: (0, pi/3), (pi/4, 3pi/4) and their
/// turns by 2pi/3 and 4pi/3.
std::vector<std::pair<double, double>> example_sectors();

}  // namespace hcurve
