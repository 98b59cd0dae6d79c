#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hcurve/common.hpp"
#include "hcurve/projective.hpp"

namespace hcurve {

/// A complex number stored as exp(log_abs) * unit, |unit| = 1. Zero is
/// log_abs = -inf with unit = 0.
struct LogComplex {
  double log_abs = -kInf;
  Complex unit{0.0, 0.0};

  static LogComplex from(Complex value);
  bool is_zero() const { return log_abs == -kInf; }
};

// ---- declarative curve families -------------------------------------------

/// f_j(z) = exp(a_j z + b_j)
struct ExponentialFamily {
  std::vector<Complex> a;
  std::vector<Complex> b;
};

/// f_j(z) = sin(eps^j z) / z with eps = exp(2 pi i / order), j = 0..order-1.
/// Dividing by z removes the common zero at the origin (f_j(0) = eps^j).
struct SineSymmetricFamily {
  int order = 3;
};

/// One polynomial per component, coefficients in ascending powers.
struct PolynomialFamily {
  std::vector<std::vector<Complex>> components;
};

struct PolynomialMap {
  std::vector<Complex> coefficients;  // ascending powers
};
struct ExponentialMap {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
};
using InnerMap = std::variant<PolynomialMap, ExponentialMap>;

struct CurveSpec;

/// F o g for an entire inner map g from the whitelist.
struct ComposedFamily {
  InnerMap inner;
  std::shared_ptr<const CurveSpec> outer;
};

struct CurveSpec {
  std::variant<ExponentialFamily, SineSymmetricFamily, PolynomialFamily, ComposedFamily> family;

  /// m, so the curve has m+1 components. Throws ValidationError on malformed specs.
  std::size_t ambient_dim() const;
};

CurveSpec exponential_curve(std::vector<Complex> a, std::vector<Complex> b);
CurveSpec sine_symmetric_curve(int order);
CurveSpec polynomial_curve(std::vector<std::vector<Complex>> components);
CurveSpec composed_curve(InnerMap inner, CurveSpec outer);
/// The curve (1 : e^z).
CurveSpec exp_line_curve();
/// The constant curve (c_0 : ... : c_m).
CurveSpec constant_curve(std::vector<Complex> values);

/// F(z) = exp(log_norm) * direction with ||direction|| = 1.
struct CurveSample {
  std::vector<Complex> direction;
  double log_norm = 0.0;
};

/// Pure, thread-safe evaluator of a holomorphic curve in log scale.
class Curve {
 public:
  using SampleFn = std::function<CurveSample(Complex)>;

  explicit Curve(CurveSpec spec);
  /// Caller-supplied evaluator; must satisfy the CurveSample contract.
  Curve(std::size_t ambient_dim, SampleFn evaluator);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t component_count() const { return dim_ + 1; }
  const CurveSpec* spec() const { return spec_ ? spec_.get() : nullptr; }

  /// Writes component_count() log-scale components of F(z).
  void components(Complex z, std::span<LogComplex> out) const;
  std::vector<LogComplex> components(Complex z) const;

  CurveSample sample(Complex z) const;
  /// u(z) = log ||F(z)||
  double u(Complex z) const;

 private:
  std::shared_ptr<const CurveSpec> spec_;
  SampleFn evaluator_;
  std::size_t dim_ = 0;
};

/// log ||v|| of a vector held in log scale.
double log_norm_of(std::span<const LogComplex> comps);

/// P(v) = sum_j c_j v_j evaluated in log scale. `relative_modulus` (optional)
/// receives |sum_j c_j e^{L_j - L*} unit_j| / ||c||, with L* the largest
/// participating log-magnitude: small values mean cancellation, i.e. a nearby zero.
LogComplex apply_form(const LinearForm& form, std::span<const LogComplex> comps,
                      double* relative_modulus = nullptr);

CurveSample eval_curve(const CurveSpec& spec, Complex z);
double eval_u(const CurveSpec& spec, Complex z);
/// log |P_j(F(z))|; -inf exactly when P_j(F(z)) = 0.
double eval_uj(const Curve& curve, const LinearForm& form, Complex z);
double eval_uj(const CurveSpec& spec, const LinearForm& form, Complex z);

struct DeviationRange {
  double min = kInf;
  double max = -kInf;
};

/// Extremes of max_{j in subset} u_j - u over the samples.
DeviationRange deviation_scan(const Curve& curve, const DivisorSystem& system,
                              std::span<const std::size_t> subset,
                              std::span<const Complex> samples);

/// max distance between F(eps z) and the cyclic shift of F(z) for a
/// sine-symmetric curve, compared on (direction, log_norm). Zero in exact arithmetic.
double symmetry_check(const CurveSpec& spec, Complex z);

/// Coefficients c' with c'_{j+1} = c_j: P(F(eps z)) = P'(F(z)) up to a unit factor.
LinearForm cyclic_shift(const LinearForm& form, int steps = 1);

}  // namespace hcurve
