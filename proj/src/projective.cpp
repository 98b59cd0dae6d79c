#include "hcurve/projective.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "hcurve/lowdisc.hpp"

namespace hcurve {

namespace {

ExactComplex mul(const ExactComplex& a, const ExactComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ExactComplex sub(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }

ExactComplex div(const ExactComplex& a, const ExactComplex& b) {
  Rational den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

double l2_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ValidationError("malformed rational '" + text + "'");
  }
}

LinearForm::LinearForm(std::vector<Complex> coefficients) : coefficients_(std::move(coefficients)) {
  norm_ = l2_norm(coefficients_);
  if (coefficients_.empty() || !(norm_ > 0.0) || !std::isfinite(norm_)) {
    throw ValidationError("linear form must have finite, not-all-zero coefficients");
  }
}

LinearForm::LinearForm(std::vector<ExactComplex> coefficients) {
  if (std::all_of(coefficients.begin(), coefficients.end(),
                  [](const ExactComplex& c) { return c.is_zero(); })) {
    throw ValidationError("linear form must have not-all-zero coefficients");
  }
  coefficients_.reserve(coefficients.size());
  for (const auto& c : coefficients) coefficients_.push_back(c.to_complex());
  norm_ = l2_norm(coefficients_);
  exact_ = std::move(coefficients);
}

LinearForm LinearForm::from_integers(std::initializer_list<long long> coefficients) {
  std::vector<ExactComplex> exact;
  for (long long c : coefficients) exact.push_back({Rational(c), Rational(0)});
  return LinearForm(std::move(exact));
}

LinearForm LinearForm::scaled(Complex factor) const {
  std::vector<Complex> out = coefficients_;
  for (auto& c : out) c *= factor;
  return LinearForm(std::move(out));
}

LinearForm LinearForm::scaled(const ExactComplex& factor) const {
  if (!exact_) return scaled(factor.to_complex());
  std::vector<ExactComplex> out;
  out.reserve(exact_->size());
  for (const auto& c : *exact_) out.push_back(mul(c, factor));
  return LinearForm(std::move(out));
}

Complex evaluate_form(const LinearForm& form, std::span<const Complex> point) {
  if (point.size() != form.size()) {
    throw ValidationError("dimension mismatch: form has " + std::to_string(form.size()) +
                          " coefficients, point has " + std::to_string(point.size()));
  }
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < point.size(); ++j) acc += form.coefficients()[j] * point[j];
  return acc;
}

DivisorSystem::DivisorSystem(std::vector<LinearForm> forms_in, std::size_t order_in)
    : forms(std::move(forms_in)), ambient_dim(0), order(order_in) {
  if (forms.empty()) throw ValidationError("divisor system needs at least one form");
  if (order < 1) throw ValidationError("intersection order n must be >= 1");
  const std::size_t width = forms.front().size();
  if (width < 2) throw ValidationError("forms must act on C^{m+1} with m >= 1");
  for (const auto& f : forms) {
    if (f.size() != width) throw ValidationError("all forms must have the same number of coefficients");
  }
  ambient_dim = width - 1;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::size_t exact_rank(std::vector<std::vector<ExactComplex>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      ExactComplex f = div(rows[r][c], rows[rank][c]);
      for (std::size_t cc = c; cc < cols; ++cc) rows[r][cc] = sub(rows[r][cc], mul(f, rows[rank][cc]));
    }
    ++rank;
  }
  return rank;
}

std::size_t float_rank(const std::vector<std::vector<Complex>>& rows, double rel_threshold) {
  if (rows.empty()) return 0;
  Eigen::MatrixXcd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_threshold * s(0)) ++rank;
  return rank;
}

AdmissibilityReport check_admissible(const DivisorSystem& system) {
  const std::size_t q = system.size();
  const std::size_t n = system.order;
  const std::size_t m = system.ambient_dim;
  if (q < n + 1) {
    throw ValidationError("need at least n+1 = " + std::to_string(n + 1) + " forms, got " +
                          std::to_string(q));
  }

  AdmissibilityReport report;
  report.exact = std::all_of(system.forms.begin(), system.forms.end(),
                             [](const LinearForm& f) { return f.is_exact(); });

  auto subset_rank = [&](const std::vector<std::size_t>& subset) {
    if (report.exact) {
      std::vector<std::vector<ExactComplex>> rows;
      for (auto i : subset) rows.push_back(system.forms[i].exact_coefficients());
      return exact_rank(std::move(rows));
    }
    std::vector<std::vector<Complex>> rows;
    for (auto i : subset) rows.push_back(system.forms[i].coefficients());
    return float_rank(rows);
  };

  if (n < m) {
    std::vector<std::size_t> first(n + 1);
    std::iota(first.begin(), first.end(), 0);
    report.admissible = false;
    report.witness_rank = subset_rank(first);
    report.witness = std::move(first);
    report.subsets_checked = 1;
    report.explanation = "n = " + std::to_string(n) + " < m = " + std::to_string(m) +
                         ": any n+1 hyperplanes of P^m share a common point";
    return report;
  }

  for (const auto& subset : combinations(q, n + 1)) {
    ++report.subsets_checked;
    std::size_t rank = subset_rank(subset);
    if (rank < m + 1) {
      report.admissible = false;
      report.witness = subset;
      report.witness_rank = rank;
      report.explanation = "subset has rank " + std::to_string(rank) + " < m+1 = " +
                           std::to_string(m + 1) + ", so its hyperplanes intersect";
      return report;
    }
  }
  report.admissible = true;
  report.explanation = "every (n+1)-subset has rank m+1";
  return report;
}

BoundEstimate bounding_constants(const DivisorSystem& system, std::span<const std::size_t> subset,
                                 std::size_t sample_budget, std::uint64_t seed) {
  if (subset.size() != system.order + 1) {
    throw ValidationError("subset must have n+1 = " + std::to_string(system.order + 1) + " indices");
  }
  if (sample_budget < 10) throw ValidationError("sample_budget must be >= 10");
  for (auto i : subset)
    if (i >= system.size()) throw ValidationError("subset index out of range");

  const std::size_t dim = system.ambient_dim + 1;
  KroneckerSequence seq(2 * dim, seed);
  std::vector<double> u(2 * dim);
  std::vector<Complex> z(dim);

  BoundEstimate est;
  est.lower = kInf;
  est.upper = 0.0;
  for (std::size_t s = 0; s < sample_budget; ++s) {
    seq.next(u.data());
    // Box-Muller on coordinate pairs gives a rotation-invariant direction.
    double norm2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double rad = std::sqrt(-2.0 * std::log(1.0 - u[2 * k]));
      z[k] = std::polar(rad, kTwoPi * u[2 * k + 1]);
      norm2 += std::norm(z[k]);
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : z) c *= inv;
    double best = 0.0;
    for (auto i : subset) best = std::max(best, std::abs(evaluate_form(system.forms[i], z)));
    est.lower = std::min(est.lower, best);
    est.upper = std::max(est.upper, best);
    ++est.sample_count;
  }
  return est;
}

}  // namespace hcurve
