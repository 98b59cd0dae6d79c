#include "hcurve/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hcurve {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// Below this |Im w| sin(w) is evaluated directly; e^{30} is far from overflow.
constexpr double kDirectSineLimit = 30.0;

Complex unit_of(Complex v) {
  double a = std::abs(v);
  return a > 0.0 ? v / a : Complex{0.0, 0.0};
}

LogComplex log_sin(Complex w) {
  const double x = w.real();
  const double y = w.imag();
  if (std::abs(y) < kDirectSineLimit) return LogComplex::from(std::sin(w));
  // One exponential dominates; factor it out so nothing overflows.
  if (y > 0.0) {
    // sin w = (i/2) e^{-ix} e^{y} (1 - e^{2iw})
    Complex tail = 1.0 - std::exp(Complex{0.0, 2.0} * w);
    Complex dir = Complex{0.0, 1.0} * std::polar(1.0, -x) * tail;
    return {y - kLn2 + std::log(std::abs(tail)), unit_of(dir)};
  }
  // sin w = (-i/2) e^{ix} e^{-y} (1 - e^{-2iw})
  Complex tail = 1.0 - std::exp(Complex{0.0, -2.0} * w);
  Complex dir = Complex{0.0, -1.0} * std::polar(1.0, x) * tail;
  return {-y - kLn2 + std::log(std::abs(tail)), unit_of(dir)};
}

// sin(w)/w near 0
Complex sinc_series(Complex w) {
  Complex w2 = w * w;
  return 1.0 - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0;
}

LogComplex log_polynomial(const std::vector<Complex>& coeffs, Complex z) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == Complex{0.0, 0.0}) --deg;
  if (deg == 0) return {};
  --deg;
  const double r = std::abs(z);
  if (r <= 1.0 || deg == 0) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = deg + 1; k-- > 0;) acc = acc * z + coeffs[k];
    return LogComplex::from(acc);
  }
  // p(z) = z^deg * sum_k c_{deg-k} w^k with w = 1/z keeps every term bounded.
  Complex w = 1.0 / z;
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k <= deg; ++k) acc = acc * w + coeffs[k];
  if (acc == Complex{0.0, 0.0}) return {};
  double d = static_cast<double>(deg);
  return {d * std::log(r) + std::log(std::abs(acc)),
          std::polar(1.0, d * std::arg(z)) * unit_of(acc)};
}

Complex eval_inner(const InnerMap& inner, Complex z) {
  Complex w = std::visit(
      [&](const auto& g) -> Complex {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, PolynomialMap>) {
          Complex acc{0.0, 0.0};
          for (std::size_t k = g.coefficients.size(); k-- > 0;) acc = acc * z + g.coefficients[k];
          return acc;
        } else {
          return std::exp(g.a * z + g.b);
        }
      },
      inner);
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw NumericError("inner map of composed curve overflows at z = (" + std::to_string(z.real()) +
                       ", " + std::to_string(z.imag()) + ")");
  }
  return w;
}

void eval_spec(const CurveSpec& spec, Complex z, std::span<LogComplex> out) {
  std::visit(
      [&](const auto& fam) {
        using F = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<F, ExponentialFamily>) {
          for (std::size_t j = 0; j < fam.a.size(); ++j) {
            Complex e = fam.a[j] * z + fam.b[j];
            out[j] = {e.real(), std::polar(1.0, e.imag())};
          }
        } else if constexpr (std::is_same_v<F, SineSymmetricFamily>) {
          const double r = std::abs(z);
          for (int j = 0; j < fam.order; ++j) {
            Complex eps_j = std::polar(1.0, kTwoPi * j / fam.order);
            Complex w = eps_j * z;
            if (r < 1e-3) {
              out[j] = LogComplex::from(eps_j * sinc_series(w));
            } else {
              LogComplex s = log_sin(w);
              out[j] = {s.log_abs - std::log(r), s.unit * std::conj(z) / r};
            }
          }
        } else if constexpr (std::is_same_v<F, PolynomialFamily>) {
          for (std::size_t j = 0; j < fam.components.size(); ++j)
            out[j] = log_polynomial(fam.components[j], z);
        } else {
          eval_spec(*fam.outer, eval_inner(fam.inner, z), out);
        }
      },
      spec.family);
}

}  // namespace

LogComplex LogComplex::from(Complex value) {
  double a = std::abs(value);
  if (a == 0.0) return {};
  return {std::log(a), value / a};
}

std::size_t CurveSpec::ambient_dim() const {
  return std::visit(
      [](const auto& fam) -> std::size_t {
        using F = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<F, ExponentialFamily>) {
          if (fam.a.size() != fam.b.size() || fam.a.size() < 2)
            throw ValidationError("exponential family needs matching a, b lists of length >= 2");
          return fam.a.size() - 1;
        } else if constexpr (std::is_same_v<F, SineSymmetricFamily>) {
          if (fam.order < 2) throw ValidationError("sine_symmetric order must be >= 2");
          return static_cast<std::size_t>(fam.order - 1);
        } else if constexpr (std::is_same_v<F, PolynomialFamily>) {
          if (fam.components.size() < 2) throw ValidationError("polynomial family needs >= 2 components");
          bool any_nonzero = false;
          for (const auto& c : fam.components)
            for (const auto& v : c) any_nonzero = any_nonzero || v != Complex{0.0, 0.0};
          if (!any_nonzero) throw ValidationError("polynomial family is identically zero");
          return fam.components.size() - 1;
        } else {
          if (!fam.outer) throw ValidationError("composed family lacks an outer curve");
          return fam.outer->ambient_dim();
        }
      },
      family);
}

CurveSpec exponential_curve(std::vector<Complex> a, std::vector<Complex> b) {
  return CurveSpec{ExponentialFamily{std::move(a), std::move(b)}};
}
CurveSpec sine_symmetric_curve(int order) { return CurveSpec{SineSymmetricFamily{order}}; }
CurveSpec polynomial_curve(std::vector<std::vector<Complex>> components) {
  return CurveSpec{PolynomialFamily{std::move(components)}};
}
CurveSpec composed_curve(InnerMap inner, CurveSpec outer) {
  return CurveSpec{ComposedFamily{std::move(inner), std::make_shared<const CurveSpec>(std::move(outer))}};
}
CurveSpec exp_line_curve() { return exponential_curve({0.0, 1.0}, {0.0, 0.0}); }
CurveSpec constant_curve(std::vector<Complex> values) {
  std::vector<std::vector<Complex>> comps;
  for (auto v : values) comps.push_back({v});
  return polynomial_curve(std::move(comps));
}

Curve::Curve(CurveSpec spec)
    : spec_(std::make_shared<const CurveSpec>(std::move(spec))), dim_(spec_->ambient_dim()) {}

Curve::Curve(std::size_t ambient_dim, SampleFn evaluator)
    : evaluator_(std::move(evaluator)), dim_(ambient_dim) {
  if (!evaluator_) throw ValidationError("curve evaluator must be callable");
}

void Curve::components(Complex z, std::span<LogComplex> out) const {
  if (out.size() != component_count()) throw ValidationError("component buffer has wrong size");
  if (spec_) {
    eval_spec(*spec_, z, out);
    return;
  }
  CurveSample s = evaluator_(z);
  if (s.direction.size() != component_count()) {
    throw ValidationError("evaluator returned a direction of the wrong dimension");
  }
  for (std::size_t j = 0; j < out.size(); ++j) {
    LogComplex d = LogComplex::from(s.direction[j]);
    out[j] = d.is_zero() ? d : LogComplex{d.log_abs + s.log_norm, d.unit};
  }
}

std::vector<LogComplex> Curve::components(Complex z) const {
  std::vector<LogComplex> out(component_count());
  components(z, out);
  return out;
}

double log_norm_of(std::span<const LogComplex> comps) {
  double top = -kInf;
  for (const auto& c : comps) top = std::max(top, c.log_abs);
  if (top == -kInf) return -kInf;
  double s = 0.0;
  for (const auto& c : comps)
    if (!c.is_zero()) s += std::exp(2.0 * (c.log_abs - top));
  return top + 0.5 * std::log(s);
}

CurveSample Curve::sample(Complex z) const {
  if (!spec_) return evaluator_(z);
  std::vector<LogComplex> comps = components(z);
  CurveSample out;
  out.log_norm = log_norm_of(comps);
  out.direction.reserve(comps.size());
  for (const auto& c : comps)
    out.direction.push_back(c.is_zero() ? Complex{0.0, 0.0} : std::exp(c.log_abs - out.log_norm) * c.unit);
  return out;
}

double Curve::u(Complex z) const {
  if (!spec_) return evaluator_(z).log_norm;
  std::array<LogComplex, 16> small;
  if (component_count() <= small.size()) {
    std::span<LogComplex> buf(small.data(), component_count());
    eval_spec(*spec_, z, buf);
    return log_norm_of(buf);
  }
  return log_norm_of(components(z));
}

LogComplex apply_form(const LinearForm& form, std::span<const LogComplex> comps,
                      double* relative_modulus) {
  if (form.size() != comps.size()) {
    throw ValidationError("dimension mismatch: form has " + std::to_string(form.size()) +
                          " coefficients, curve has " + std::to_string(comps.size()) + " components");
  }
  const auto& c = form.coefficients();
  double top = -kInf;
  for (std::size_t j = 0; j < comps.size(); ++j)
    if (c[j] != Complex{0.0, 0.0}) top = std::max(top, comps[j].log_abs);
  if (top == -kInf) {
    if (relative_modulus) *relative_modulus = 0.0;
    return {};
  }
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (c[j] == Complex{0.0, 0.0} || comps[j].is_zero()) continue;
    acc += c[j] * std::exp(comps[j].log_abs - top) * comps[j].unit;
  }
  double mag = std::abs(acc);
  if (relative_modulus) *relative_modulus = mag / form.norm();
  if (mag == 0.0) return {};
  return {top + std::log(mag), acc / mag};
}

CurveSample eval_curve(const CurveSpec& spec, Complex z) { return Curve(spec).sample(z); }

double eval_u(const CurveSpec& spec, Complex z) { return Curve(spec).u(z); }

double eval_uj(const Curve& curve, const LinearForm& form, Complex z) {
  if (form.size() != curve.component_count()) {
    throw ValidationError("dimension mismatch between form and curve");
  }
  std::vector<LogComplex> comps = curve.components(z);
  return apply_form(form, comps).log_abs;
}

double eval_uj(const CurveSpec& spec, const LinearForm& form, Complex z) {
  return eval_uj(Curve(spec), form, z);
}

DeviationRange deviation_scan(const Curve& curve, const DivisorSystem& system,
                              std::span<const std::size_t> subset,
                              std::span<const Complex> samples) {
  if (system.ambient_dim != curve.ambient_dim()) {
    throw ValidationError("divisor system and curve live in different projective spaces");
  }
  for (auto i : subset)
    if (i >= system.size()) throw ValidationError("subset index out of range");
  DeviationRange out;
  std::vector<LogComplex> comps(curve.component_count());
  for (Complex z : samples) {
    curve.components(z, comps);
    double u = log_norm_of(comps);
    double best = -kInf;
    for (auto i : subset) best = std::max(best, apply_form(system.forms[i], comps).log_abs);
    double dev = best - u;
    out.min = std::min(out.min, dev);
    out.max = std::max(out.max, dev);
  }
  return out;
}

double symmetry_check(const CurveSpec& spec, Complex z) {
  const auto* fam = std::get_if<SineSymmetricFamily>(&spec.family);
  if (!fam) throw ValidationError("symmetry_check requires a sine_symmetric curve");
  const int q = fam->order;
  const Complex eps = std::polar(1.0, kTwoPi / q);
  Curve curve(spec);
  CurveSample here = curve.sample(z);
  CurveSample rotated = curve.sample(eps * z);
  // F(eps z) = eps^{-1} (f_1, ..., f_{q-1}, f_0)(z)
  double worst = std::abs(rotated.log_norm - here.log_norm);
  for (int j = 0; j < q; ++j) {
    Complex expected = here.direction[(j + 1) % q] / eps;
    worst = std::max(worst, std::abs(rotated.direction[j] - expected));
  }
  return worst;
}

LinearForm cyclic_shift(const LinearForm& form, int steps) {
  const std::size_t n = form.size();
  const std::size_t s = static_cast<std::size_t>(((steps % static_cast<int>(n)) + static_cast<int>(n))) % n;
  if (form.is_exact()) {
    std::vector<ExactComplex> out(n);
    for (std::size_t j = 0; j < n; ++j) out[(j + s) % n] = form.exact_coefficients()[j];
    return LinearForm(std::move(out));
  }
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) out[(j + s) % n] = form.coefficients()[j];
  return LinearForm(std::move(out));
}

}  // namespace hcurve
