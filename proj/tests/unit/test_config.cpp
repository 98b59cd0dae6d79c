#include <string>

#include "doctest.h"

#include "hcurve/config.hpp"

using namespace hcurve;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_SUITE("config") {

TEST_CASE("bundled configs parse") {
  for (const char* name : {"paper", "exp_line", "counterexample", "lemma_demo", "admissible"}) {
    CAPTURE(name);
    auto cfg = load_config(std::string(HCURVE_SOURCE_DIR) + "/configs/" + name + ".json");
    CHECK(cfg.analysis.has_value());
  }
}

TEST_CASE("sine example config contents") {
  auto cfg = load_config(std::string(HCURVE_SOURCE_DIR) + "/configs/paper.json");
  CHECK(*cfg.analysis == Analysis::verify_example);
  CHECK(cfg.seed == 7);
  REQUIRE(cfg.system.has_value());
  CHECK(cfg.system->size() == 6);
  CHECK(cfg.system->order == 2);
  for (const auto& f : cfg.system->forms) CHECK(f.is_exact());
  REQUIRE(cfg.curve.has_value());
  CHECK(cfg.curve->ambient_dim() == 2);
  CHECK(example_sectors().size() == 6);
}

TEST_CASE("defaults") {
  auto cfg = parse_config(R"({"analysis": "admissible", "system": {"order": 1, "forms": [[1, 0], [0, 1], [1, -1]]}})");
  CHECK(cfg.seed == 0);
  CHECK(cfg.numeric.t == 2.0);
  CHECK(cfg.numeric.m_first == 0);
  CHECK(cfg.numeric.m_last == 10);
  CHECK(cfg.numeric.grid_density == 200);
  CHECK_FALSE(cfg.output_dir.has_value());
  CHECK(cfg.echo["analysis"] == "admissible");
}

TEST_CASE("coefficient notations") {
  auto cfg = parse_config(R"({"system": {"order": 1, "forms": [[1, "-3/4"], [[0, 1], 2], ["2", 0.5]]}})");
  const auto& f = cfg.system->forms;
  CHECK(f[0].is_exact());
  CHECK(f[0].exact_coefficients()[1].re == Rational(-3, 4));
  CHECK(f[1].is_exact());
  CHECK(f[1].coefficients()[0] == Complex(0.0, 1.0));
  CHECK_FALSE(f[2].is_exact());
}

TEST_CASE("curve families") {
  auto parse_curve = [](const std::string& curve) {
    return parse_config(R"({"curve": )" + curve + "}").curve->ambient_dim();
  };
  CHECK(parse_curve(R"({"family": "sine_symmetric", "order": 5})") == 4);
  CHECK(parse_curve(R"({"family": "exp_line"})") == 1);
  CHECK(parse_curve(R"({"family": "exponential", "a": [0, 1, [0, 1]], "b": [0, 0, 0]})") == 2);
  CHECK(parse_curve(R"({"family": "polynomial", "components": [[1], [0, 1]]})") == 1);
  CHECK(parse_curve(R"({"family": "constant", "values": [1, 2]})") == 1);
  CHECK(parse_curve(R"({"family": "composed", "inner": {"map": "exponential", "a": 1, "b": 0},
                        "outer": {"family": "exp_line"}})") == 1);
}

TEST_CASE("densities") {
  auto cfg = parse_config(R"({
    "curve": {"family": "exp_line"},
    "measures": [
      {"density": "inverse_square", "cutoff": 1},
      {"density": "lebesgue", "value": 2, "support": {"radius": 1}},
      {"name": "pts", "density": "atomic", "atoms": [{"point": [0, 1], "mass": 3}]},
      {"density": "gaussian", "mass": 2, "sigma": 0.5},
      {"density": "curve"},
      {"density": "mixture", "parts": [{"density": "gaussian", "mass": 1, "sigma": 1}, {"density": "lebesgue"}]}
    ]})");
  REQUIRE(cfg.measures.size() == 6);
  CHECK(cfg.measures[0].name == "inverse_square_0");
  CHECK(cfg.measures[2].name == "pts");
  CHECK(cfg.measures[1].oracle->mass({{0.0, 0.0}, 5.0}) == doctest::Approx(2.0 * kPi));
  CHECK(cfg.measures[2].oracle->mass({{0.0, 1.0}, 0.1}) == 3.0);
  CHECK(cfg.measures[1].finite);
  CHECK_FALSE(cfg.measures[0].finite);
  CHECK_FALSE(cfg.measures[5].finite);
  CHECK(cfg.measures[4].oracle->kind() == "curve");
}

TEST_CASE("errors carry line and pointer") {
  std::string text = "{\n  \"system\": {\n    \"order\": 1,\n    \"forms\": [[1, 0],\n              [1, \"x/2\"]]\n  }\n}\n";
  std::string e = error_of(text);
  CHECK(starts_with(e, "cfg.json:5: /system/forms/1/1: malformed rational"));

  CHECK(starts_with(error_of("{\n  \"analysis\": \"admissible\",\n  \"sytem\": {}\n}"), "cfg.json:3: /sytem: unknown field"));
  CHECK(starts_with(error_of("{\n \"numeric\": {\n  \"grid_density\": 200,\n  \"t\": 0.5\n }\n}"),
                    "cfg.json:4: /numeric/t: value 0.5 outside"));
  CHECK(starts_with(error_of("{\"analysis\": \"plot\"}"), "cfg.json:1: /analysis: unknown analysis"));
  CHECK(starts_with(error_of("{\"schema\": \"other/2\"}"), "cfg.json:1: /schema: unsupported schema"));
  CHECK(starts_with(error_of("{\"seed\": -1}"), "cfg.json:1: /seed:"));
  CHECK(starts_with(error_of("{\n\"curve\": {\"family\": \"bessel\"}}"), "cfg.json:2: /curve/family:"));
  CHECK(starts_with(error_of("{\"measures\": [{\"density\": \"curve\"}]}"), "cfg.json:1: /measures/0:"));
  CHECK(error_of("{\"system\": {\"order\": 1, \"forms\": [[0, 0], [1, 1]]}}").find("/system/forms/0") != std::string::npos);
  CHECK(error_of("{\"numeric\": {\"sectors\": [[0, 0.1]]}}").find("/numeric/sectors/0") != std::string::npos);
  CHECK(error_of("{\"numeric\": {\"schedule\": [16, 8]}}").find("strictly increasing") != std::string::npos);
  CHECK(error_of("{\"curve\": {\"family\": \"exp_line\"}, \"system\": {\"order\": 2, \"forms\": [[1,0,0],[0,1,0],[0,0,1]]}}")
            .find("components") != std::string::npos);
}

TEST_CASE("syntax errors report line and column") {
  std::string e = error_of("{\n  \"seed\": 1,\n  \"analysis\" \"admissible\"\n}");
  CHECK(starts_with(e, "cfg.json:3:"));
  CHECK(e.find("invalid JSON") != std::string::npos);
  CHECK(starts_with(error_of(""), "cfg.json:1:1: invalid JSON"));
  CHECK(starts_with(error_of("[1, 2]"), "cfg.json:1: /: "));
}

TEST_CASE("analysis names") {
  CHECK(analysis_from_name("verify-example") == Analysis::verify_example);
  CHECK(analysis_from_name("lemma_demo") == Analysis::lemma_demo);
  CHECK_FALSE(analysis_from_name("nope").has_value());
  CHECK(analysis_name(Analysis::counterexample) == "counterexample");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
}

}
