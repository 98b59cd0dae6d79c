#include "hcurve/config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace hcurve {

using nlohmann::json;

std::string analysis_name(Analysis a) {
  switch (a) {
    case Analysis::admissible: return "admissible";
    case Analysis::analyze: return "analyze";
    case Analysis::remplissage: return "remplissage";
    case Analysis::verify_example: return "verify_example";
    case Analysis::lemma_demo: return "lemma_demo";
    case Analysis::counterexample: return "counterexample";
  }
  return "?";
}

std::optional<Analysis> analysis_from_name(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '-', '_');
  for (Analysis a : {Analysis::admissible, Analysis::analyze, Analysis::remplissage, Analysis::verify_example,
                     Analysis::lemma_demo, Analysis::counterexample}) {
    if (analysis_name(a) == n) return a;
  }
  return std::nullopt;
}

std::vector<std::pair<double, double>> example_sectors() {
  std::vector<std::pair<double, double>> out;
  for (auto base : {std::pair{0.0, kPi / 3.0}, std::pair{kPi / 4.0, 3.0 * kPi / 4.0}}) {
    for (int k = 0; k < 3; ++k) {
      double turn = kTwoPi * k / 3.0;
      out.emplace_back(base.first + turn, base.second + turn);
    }
  }
  return out;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

namespace {

std::string rational_text(const Rational& r) { return r.str(); }

json exact_to_json(const ExactComplex& c) {
  auto part = [](const Rational& r) -> json {
    if (denominator(r) == 1 && abs(numerator(r)) < Rational(1LL << 53)) return static_cast<long long>(numerator(r));
    return rational_text(r);
  };
  if (c.im == 0) return part(c.re);
  return json::array({part(c.re), part(c.im)});
}

}  // namespace

json form_to_json(const LinearForm& form) {
  json out = json::array();
  if (form.is_exact()) {
    for (const auto& c : form.exact_coefficients()) out.push_back(exact_to_json(c));
  } else {
    for (const auto& c : form.coefficients()) {
      if (c.imag() == 0.0) out.push_back(c.real());
      else out.push_back(complex_to_json(c));
    }
  }
  return out;
}

namespace {

// ---- source positions -------------------------------------------------------

// Input iterator that publishes how far the parser has read.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator(const char* base, const char* p, std::size_t* consumed) : base_(base), p_(p), consumed_(consumed) {}
  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    *consumed_ = static_cast<std::size_t>(p_ - base_);
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* base_;
  const char* p_;
  std::size_t* consumed_;
};

class PositionIndex {
 public:
  explicit PositionIndex(const std::string& text) {
    for (std::size_t k = 0; k < text.size(); ++k)
      if (text[k] == '\n') newlines_.push_back(k);
  }

  int line_of_offset(std::size_t offset) const {
    auto it = std::lower_bound(newlines_.begin(), newlines_.end(), offset);
    return static_cast<int>(it - newlines_.begin()) + 1;
  }

  void record(const std::string& pointer, std::size_t offset) {
    lines_.emplace(pointer, line_of_offset(offset > 0 ? offset - 1 : 0));
  }

  int line(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      if (p.empty()) return 1;
      p = p.substr(0, p.rfind('/'));
    }
  }

 private:
  std::vector<std::size_t> newlines_;
  std::map<std::string, int> lines_;
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Records the line of every key and array element while the document is parsed.
class PositionSax : public nlohmann::json_sax<json> {
 public:
  PositionSax(PositionIndex& index, const std::size_t& consumed) : index_(index), consumed_(consumed) {}

  bool null() override { return value(); }
  bool boolean(bool) override { return value(); }
  bool number_integer(number_integer_t) override { return value(); }
  bool number_unsigned(number_unsigned_t) override { return value(); }
  bool number_float(number_float_t, const string_t&) override { return value(); }
  bool string(string_t&) override { return value(); }
  bool binary(binary_t&) override { return value(); }
  bool start_object(std::size_t) override {
    std::string p = child();
    frames_.push_back({false, 0, p});
    return true;
  }
  bool key(string_t& k) override {
    frames_.back().pending = frames_.back().pointer + "/" + escape_token(k);
    index_.record(frames_.back().pending, consumed_);
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    std::string p = child();
    frames_.push_back({true, 0, p});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

 private:
  struct Frame {
    bool array;
    std::size_t next;
    std::string pointer;
    std::string pending{};
  };

  std::string child() {
    if (frames_.empty()) {
      index_.record("", consumed_);
      return "";
    }
    Frame& f = frames_.back();
    if (!f.array) return f.pending;
    std::string p = f.pointer + "/" + std::to_string(f.next++);
    index_.record(p, consumed_);
    return p;
  }
  bool value() {
    child();
    return true;
  }

  PositionIndex& index_;
  const std::size_t& consumed_;
  std::vector<Frame> frames_;
};

// ---- typed access with line-anchored errors ----------------------------------

class Reader {
 public:
  Reader(const PositionIndex& index, std::string source) : index_(index), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& reason) const {
    std::ostringstream msg;
    msg << source_ << ":" << index_.line(pointer) << ": " << (pointer.empty() ? "/" : pointer) << ": " << reason;
    throw ValidationError(msg.str());
  }

  const json& require(const json& obj, const std::string& ptr, const std::string& key) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, "missing required field \"" + key + "\"");
    return *it;
  }

  void only_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!ok.count(it.key())) fail(ptr + "/" + escape_token(it.key()), "unknown field \"" + it.key() + "\"");
    }
  }

  double real(const json& v, const std::string& ptr) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      try {
        return static_cast<double>(parse_rational(v.get<std::string>()));
      } catch (const std::exception&) {
      }
    }
    fail(ptr, "expected a real number");
  }

  double real_in(const json& v, const std::string& ptr, double lo, double hi, bool lo_open, bool hi_open) const {
    double x = real(v, ptr);
    bool ok = std::isfinite(x) && (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
    if (!ok) {
      std::ostringstream msg;
      msg << "value " << x << " outside " << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
      fail(ptr, msg.str());
    }
    return x;
  }

  long long integer_in(const json& v, const std::string& ptr, long long lo, long long hi) const {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    long long x = v.get<long long>();
    if (x < lo || x > hi) fail(ptr, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]");
    return x;
  }

  std::string string(const json& v, const std::string& ptr) const {
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get<std::string>();
  }

  // number | "p/q" | [re, im]; exact when every part is an integer or rational string.
  ExactComplex exact_scalar(const json& v, const std::string& ptr, bool& exact) const {
    auto part = [&](const json& p, const std::string& pp) -> Rational {
      if (p.is_number_integer()) return Rational(p.get<long long>());
      if (p.is_string()) {
        try {
          return parse_rational(p.get<std::string>());
        } catch (const std::exception&) {
          fail(pp, "malformed rational \"" + p.get<std::string>() + "\" (expected p or p/q)");
        }
      }
      if (p.is_number()) {
        exact = false;
        return Rational(0);
      }
      fail(pp, "expected a number, a rational string or an [re, im] pair");
    };
    if (v.is_array()) {
      if (v.size() != 2) fail(ptr, "complex values are [re, im] pairs");
      return {part(v[0], ptr + "/0"), part(v[1], ptr + "/1")};
    }
    return {part(v, ptr), Rational(0)};
  }

  Complex complex(const json& v, const std::string& ptr) const {
    if (v.is_array()) {
      if (v.size() != 2) fail(ptr, "complex values are [re, im] pairs");
      return {real(v[0], ptr + "/0"), real(v[1], ptr + "/1")};
    }
    return {real(v, ptr), 0.0};
  }

  std::vector<Complex> complex_list(const json& v, const std::string& ptr) const {
    if (!v.is_array()) fail(ptr, "expected a list");
    std::vector<Complex> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(complex(v[k], ptr + "/" + std::to_string(k)));
    return out;
  }

  std::vector<double> positive_list(const json& v, const std::string& ptr, bool increasing) const {
    if (!v.is_array() || v.empty()) fail(ptr, "expected a nonempty list");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::string p = ptr + "/" + std::to_string(k);
      double x = real_in(v[k], p, 0.0, 1e12, true, false);
      if (increasing && !out.empty() && !(x > out.back())) fail(p, "list must be strictly increasing");
      out.push_back(x);
    }
    return out;
  }

  LinearForm form(const json& v, const std::string& ptr) const {
    if (!v.is_array() || v.empty()) fail(ptr, "a form is a nonempty coefficient list");
    bool exact = true;
    std::vector<ExactComplex> ex;
    for (std::size_t k = 0; k < v.size(); ++k) ex.push_back(exact_scalar(v[k], ptr + "/" + std::to_string(k), exact));
    try {
      if (exact) return LinearForm(std::move(ex));
      std::vector<Complex> fl;
      for (std::size_t k = 0; k < v.size(); ++k) fl.push_back(complex(v[k], ptr + "/" + std::to_string(k)));
      return LinearForm(std::move(fl));
    } catch (const ValidationError& e) {
      fail(ptr, e.what());
    }
  }

  CurveSpec curve(const json& v, const std::string& ptr) const {
    std::string family = string(require(v, ptr, "family"), ptr + "/family");
    try {
      if (family == "sine_symmetric") {
        only_keys(v, ptr, {"family", "order"});
        int order = v.contains("order") ? static_cast<int>(integer_in(v["order"], ptr + "/order", 2, 12)) : 3;
        return sine_symmetric_curve(order);
      }
      if (family == "exp_line") {
        only_keys(v, ptr, {"family"});
        return exp_line_curve();
      }
      if (family == "exponential") {
        only_keys(v, ptr, {"family", "a", "b"});
        auto a = complex_list(require(v, ptr, "a"), ptr + "/a");
        std::vector<Complex> b(a.size(), Complex{0.0, 0.0});
        if (v.contains("b")) b = complex_list(v["b"], ptr + "/b");
        if (b.size() != a.size()) fail(ptr + "/b", "needs one entry per component");
        return exponential_curve(a, b);
      }
      if (family == "polynomial") {
        only_keys(v, ptr, {"family", "components"});
        const json& comps = require(v, ptr, "components");
        if (!comps.is_array()) fail(ptr + "/components", "expected a list of coefficient lists");
        std::vector<std::vector<Complex>> cs;
        for (std::size_t k = 0; k < comps.size(); ++k)
          cs.push_back(complex_list(comps[k], ptr + "/components/" + std::to_string(k)));
        return polynomial_curve(cs);
      }
      if (family == "constant") {
        only_keys(v, ptr, {"family", "values"});
        return constant_curve(complex_list(require(v, ptr, "values"), ptr + "/values"));
      }
      if (family == "composed") {
        only_keys(v, ptr, {"family", "inner", "outer"});
        const json& in = require(v, ptr, "inner");
        std::string ip = ptr + "/inner";
        std::string map = string(require(in, ip, "map"), ip + "/map");
        InnerMap inner;
        if (map == "polynomial") {
          only_keys(in, ip, {"map", "coefficients"});
          inner = PolynomialMap{complex_list(require(in, ip, "coefficients"), ip + "/coefficients")};
        } else if (map == "exponential") {
          only_keys(in, ip, {"map", "a", "b"});
          ExponentialMap e;
          if (in.contains("a")) e.a = complex(in["a"], ip + "/a");
          if (in.contains("b")) e.b = complex(in["b"], ip + "/b");
          inner = e;
        } else {
          fail(ip + "/map", "unknown inner map \"" + map + "\" (polynomial, exponential)");
        }
        return composed_curve(inner, curve(require(v, ptr, "outer"), ptr + "/outer"));
      }
    } catch (const ValidationError& e) {
      std::string what = e.what();
      if (what.rfind(source_ + ":", 0) == 0) throw;
      fail(ptr, what);
    }
    fail(ptr + "/family",
         "unknown curve family \"" + family + "\" (sine_symmetric, exp_line, exponential, polynomial, constant, composed)");
  }

  DivisorSystem system(const json& v, const std::string& ptr) const {
    only_keys(v, ptr, {"order", "forms"});
    std::size_t order = static_cast<std::size_t>(integer_in(require(v, ptr, "order"), ptr + "/order", 1, 64));
    const json& fs = require(v, ptr, "forms");
    if (!fs.is_array() || fs.empty()) fail(ptr + "/forms", "expected a nonempty list of forms");
    std::vector<LinearForm> forms;
    for (std::size_t k = 0; k < fs.size(); ++k) forms.push_back(form(fs[k], ptr + "/forms/" + std::to_string(k)));
    try {
      return DivisorSystem(std::move(forms), order);
    } catch (const ValidationError& e) {
      fail(ptr, e.what());
    }
  }

  NamedMeasure measure(const json& v, const std::string& ptr, const std::optional<CurveSpec>& curve_spec,
                       const NumericKnobs& knobs, std::size_t index) const {
    NamedMeasure out;
    out.tag = string(require(v, ptr, "density"), ptr + "/density");
    out.name = v.contains("name") ? string(v["name"], ptr + "/name") : out.tag + "_" + std::to_string(index);
    try {
      if (out.tag == "inverse_square") {
        only_keys(v, ptr, {"density", "name", "cutoff"});
        double cutoff = v.contains("cutoff") ? real_in(v["cutoff"], ptr + "/cutoff", 0.0, 1e12, false, false) : 0.0;
        out.oracle = std::make_shared<InverseSquareDensity>(cutoff);
      } else if (out.tag == "lebesgue") {
        only_keys(v, ptr, {"density", "name", "value", "support"});
        double value = v.contains("value") ? real_in(v["value"], ptr + "/value", 0.0, 1e12, false, false) : 1.0;
        Disc support{{0.0, 0.0}, kInf};
        if (v.contains("support")) {
          const json& s = v["support"];
          std::string sp = ptr + "/support";
          only_keys(s, sp, {"center", "radius"});
          support.center = s.contains("center") ? complex(s["center"], sp + "/center") : Complex{0.0, 0.0};
          support.radius = real_in(require(s, sp, "radius"), sp + "/radius", 0.0, 1e12, true, false);
          out.finite = true;
        }
        out.oracle = std::make_shared<UniformDensity>(value, support);
      } else if (out.tag == "atomic") {
        only_keys(v, ptr, {"density", "name", "atoms"});
        const json& atoms = require(v, ptr, "atoms");
        if (!atoms.is_array()) fail(ptr + "/atoms", "expected a list of {point, mass}");
        std::vector<Atom> list;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
          std::string ap = ptr + "/atoms/" + std::to_string(k);
          only_keys(atoms[k], ap, {"point", "mass"});
          list.push_back({complex(require(atoms[k], ap, "point"), ap + "/point"),
                          real_in(require(atoms[k], ap, "mass"), ap + "/mass", 0.0, 1e300, false, false)});
        }
        out.oracle = std::make_shared<AtomicMeasure>(std::move(list));
        out.finite = true;
      } else if (out.tag == "gaussian") {
        only_keys(v, ptr, {"density", "name", "center", "mass", "sigma"});
        Complex c = v.contains("center") ? complex(v["center"], ptr + "/center") : Complex{0.0, 0.0};
        double m = real_in(require(v, ptr, "mass"), ptr + "/mass", 0.0, 1e300, false, false);
        double s = real_in(require(v, ptr, "sigma"), ptr + "/sigma", 0.0, 1e12, true, false);
        out.oracle = std::make_shared<GaussianBump>(c, m, s);
        out.finite = true;
      } else if (out.tag == "curve") {
        only_keys(v, ptr, {"density", "name", "curve"});
        std::optional<CurveSpec> spec = curve_spec;
        if (v.contains("curve")) spec = curve(v["curve"], ptr + "/curve");
        if (!spec) fail(ptr, "density \"curve\" needs a top-level curve or an inline \"curve\"");
        GreenSettings g;
        g.nodes = knobs.green_nodes;
        out.oracle = std::make_shared<CurveMeasure>(Curve(*spec), g);
      } else if (out.tag == "mixture") {
        only_keys(v, ptr, {"density", "name", "parts"});
        const json& parts = require(v, ptr, "parts");
        if (!parts.is_array() || parts.empty()) fail(ptr + "/parts", "expected a nonempty list of densities");
        std::vector<MeasurePtr> ps;
        out.finite = true;
        for (std::size_t k = 0; k < parts.size(); ++k) {
          NamedMeasure p = measure(parts[k], ptr + "/parts/" + std::to_string(k), curve_spec, knobs, k);
          out.finite = out.finite && p.finite;
          ps.push_back(p.oracle);
        }
        out.oracle = std::make_shared<MixtureMeasure>(std::move(ps));
      } else {
        fail(ptr + "/density", "unknown density tag \"" + out.tag +
                                   "\" (inverse_square, lebesgue, atomic, gaussian, curve, mixture)");
      }
    } catch (const ValidationError& e) {
      std::string what = e.what();
      if (what.rfind(source_ + ":", 0) == 0) throw;
      fail(ptr, what);
    }
    return out;
  }

  NumericKnobs knobs(const json& v, const std::string& ptr) const {
    NumericKnobs k;
    only_keys(v, ptr,
              {"t", "m_range", "growth", "grid_density", "green_nodes", "boundary_nodes", "quad_points",
               "majorant_nodes", "radii", "sector_radii", "sectors", "disc_fraction", "hit_threshold", "cluster_tol",
               "keep_fraction", "bound_samples", "deviation_samples", "schedule", "disc_samples", "cover_pairs",
               "synthetic_count", "grid_points"});
    auto p = [&](const char* key) { return ptr + "/" + key; };
    if (v.contains("t")) k.t = real_in(v["t"], p("t"), 1.0, 16.0, true, false);
    if (v.contains("m_range")) {
      const json& r = v["m_range"];
      if (!r.is_array() || r.size() != 2) fail(p("m_range"), "expected [m_first, m_last]");
      k.m_first = static_cast<int>(integer_in(r[0], p("m_range") + "/0", 0, 60));
      k.m_last = static_cast<int>(integer_in(r[1], p("m_range") + "/1", 0, 60));
      if (k.m_last - k.m_first < 2) fail(p("m_range"), "the range needs at least 3 annuli");
    }
    if (v.contains("growth")) k.growth = real_in(v["growth"], p("growth"), 1.0, 1e6, false, false);
    if (v.contains("grid_density"))
      k.grid_density = static_cast<std::size_t>(integer_in(v["grid_density"], p("grid_density"), 100, 20000));
    if (v.contains("green_nodes"))
      k.green_nodes = static_cast<std::size_t>(integer_in(v["green_nodes"], p("green_nodes"), 64, 65536));
    if (v.contains("boundary_nodes"))
      k.boundary_nodes = static_cast<std::size_t>(integer_in(v["boundary_nodes"], p("boundary_nodes"), 64, 1 << 20));
    if (v.contains("quad_points"))
      k.quad_points = static_cast<std::size_t>(integer_in(v["quad_points"], p("quad_points"), 15, 4096));
    if (v.contains("majorant_nodes"))
      k.majorant_nodes = static_cast<std::size_t>(integer_in(v["majorant_nodes"], p("majorant_nodes"), 64, 1 << 16));
    if (v.contains("radii")) k.radii = positive_list(v["radii"], p("radii"), false);
    if (v.contains("sector_radii")) k.sector_radii = positive_list(v["sector_radii"], p("sector_radii"), false);
    if (v.contains("sectors")) {
      const json& s = v["sectors"];
      if (!s.is_array() || s.empty()) fail(p("sectors"), "expected a nonempty list of [angle_lo, angle_hi]");
      for (std::size_t j = 0; j < s.size(); ++j) {
        std::string sp = p("sectors") + "/" + std::to_string(j);
        if (!s[j].is_array() || s[j].size() != 2) fail(sp, "expected [angle_lo, angle_hi]");
        double lo = real(s[j][0], sp + "/0");
        double hi = real(s[j][1], sp + "/1");
        if (!(hi - lo > 0.2)) fail(sp, "sector width must exceed 0.2 rad");
        k.sectors.emplace_back(lo, hi);
      }
    }
    if (v.contains("disc_fraction"))
      k.disc_fraction = real_in(v["disc_fraction"], p("disc_fraction"), 0.0, 0.25, true, false);
    if (v.contains("hit_threshold")) k.hit_threshold = integer_in(v["hit_threshold"], p("hit_threshold"), 1, 1000000);
    if (v.contains("cluster_tol")) k.cluster_tol = real_in(v["cluster_tol"], p("cluster_tol"), 0.0, kPi, true, true);
    if (v.contains("keep_fraction"))
      k.keep_fraction = real_in(v["keep_fraction"], p("keep_fraction"), 0.0, 1.0, true, false);
    if (v.contains("bound_samples"))
      k.bound_samples = static_cast<std::size_t>(integer_in(v["bound_samples"], p("bound_samples"), 1, 10000000));
    if (v.contains("deviation_samples"))
      k.deviation_samples =
          static_cast<std::size_t>(integer_in(v["deviation_samples"], p("deviation_samples"), 1, 1000000));
    if (v.contains("schedule")) k.schedule = positive_list(v["schedule"], p("schedule"), true);
    if (v.contains("disc_samples"))
      k.disc_samples = static_cast<std::size_t>(integer_in(v["disc_samples"], p("disc_samples"), 1, 1000000));
    if (v.contains("cover_pairs"))
      k.cover_pairs = static_cast<std::size_t>(integer_in(v["cover_pairs"], p("cover_pairs"), 1, 100000));
    if (v.contains("synthetic_count"))
      k.synthetic_count = static_cast<std::size_t>(integer_in(v["synthetic_count"], p("synthetic_count"), 1, 10000));
    if (v.contains("grid_points"))
      k.grid_points = static_cast<std::size_t>(integer_in(v["grid_points"], p("grid_points"), 3, 1001));
    return k;
  }

 private:
  const PositionIndex& index_;
  std::string source_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  PositionIndex index(text);
  std::size_t consumed = 0;
  {
    PositionSax sax(index, consumed);
    CountingIterator first(text.data(), text.data(), &consumed);
    CountingIterator last(text.data(), text.data() + text.size(), &consumed);
    json::sax_parse(first, last, &sax);
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    std::size_t line_start = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    std::size_t col = line_start == std::string::npos ? byte + 1 : byte - line_start;
    std::ostringstream msg;
    msg << source << ":" << index.line_of_offset(byte) << ":" << col << ": invalid JSON: " << e.what();
    throw ValidationError(msg.str());
  }

  Reader rd(index, source);
  if (!doc.is_object()) rd.fail("", "the config must be a JSON object");
  rd.only_keys(doc, "", {"schema", "analysis", "seed", "curve", "system", "measures", "numeric", "output_dir"});

  RunConfig cfg;
  cfg.source = source;
  cfg.echo = doc;
  if (doc.contains("schema")) {
    std::string s = rd.string(doc["schema"], "/schema");
    if (s != "hcurve-config/1") rd.fail("/schema", "unsupported schema \"" + s + "\" (expected hcurve-config/1)");
  }
  if (doc.contains("analysis")) {
    std::string a = rd.string(doc["analysis"], "/analysis");
    cfg.analysis = analysis_from_name(a);
    if (!cfg.analysis) {
      rd.fail("/analysis", "unknown analysis \"" + a +
                               "\" (admissible, analyze, remplissage, verify_example, lemma_demo, counterexample)");
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) rd.fail("/seed", "seed must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output_dir")) cfg.output_dir = rd.string(doc["output_dir"], "/output_dir");
  if (doc.contains("numeric")) cfg.numeric = rd.knobs(doc["numeric"], "/numeric");
  if (doc.contains("curve")) cfg.curve = rd.curve(doc["curve"], "/curve");
  if (doc.contains("system")) {
    cfg.system = rd.system(doc["system"], "/system");
    if (cfg.curve && cfg.curve->ambient_dim() != cfg.system->ambient_dim) {
      rd.fail("/system/forms", "forms have " + std::to_string(cfg.system->ambient_dim + 1) +
                                   " coefficients but the curve has " + std::to_string(cfg.curve->ambient_dim() + 1) +
                                   " components");
    }
  }
  if (doc.contains("measures")) {
    const json& ms = doc["measures"];
    if (!ms.is_array()) rd.fail("/measures", "expected a list of densities");
    std::set<std::string> names;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      std::string mp = "/measures/" + std::to_string(k);
      NamedMeasure m = rd.measure(ms[k], mp, cfg.curve, cfg.numeric, k);
      if (!names.insert(m.name).second) rd.fail(mp + "/name", "duplicate measure name \"" + m.name + "\"");
      cfg.measures.push_back(std::move(m));
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open config file");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text, path);
}

}  // namespace hcurve
