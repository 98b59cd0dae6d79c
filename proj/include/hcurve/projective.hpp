#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcurve/common.hpp"

namespace hcurve {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational p + q i with p, q in Q.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  Complex to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

/// Parses "p", "p/q" or "-p/q" into an exact rational.
Rational parse_rational(const std::string& text);

/// A linear form on C^{m+1}. Forms built from rational data keep an exact copy
/// so rank decisions never depend on round-off.
class LinearForm {
 public:
  explicit LinearForm(std::vector<Complex> coefficients);
  explicit LinearForm(std::vector<ExactComplex> coefficients);

  static LinearForm from_integers(std::initializer_list<long long> coefficients);

  std::size_t size() const { return coefficients_.size(); }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::vector<ExactComplex>& exact_coefficients() const { return *exact_; }
  double norm() const { return norm_; }

  LinearForm scaled(Complex factor) const;
  LinearForm scaled(const ExactComplex& factor) const;

 private:
  std::vector<Complex> coefficients_;
  std::optional<std::vector<ExactComplex>> exact_;
  double norm_ = 0.0;
};

/// sum_j coefficients[j] * point[j]
Complex evaluate_form(const LinearForm& form, std::span<const Complex> point);

/// q hyperplanes of P^m together with the intersection order n: the system is
/// admissible when any n+1 of the hyperplanes have empty common intersection.
struct DivisorSystem {
  DivisorSystem(std::vector<LinearForm> forms, std::size_t order);

  std::vector<LinearForm> forms;
  std::size_t ambient_dim;  // m
  std::size_t order;        // n

  std::size_t size() const { return forms.size(); }
};

struct AdmissibilityReport {
  bool admissible = false;
  std::optional<std::vector<std::size_t>> witness;  // deficient (n+1)-subset
  std::size_t witness_rank = 0;
  std::size_t subsets_checked = 0;
  bool exact = false;
  std::string explanation;
};

AdmissibilityReport check_admissible(const DivisorSystem& system);

std::size_t exact_rank(std::vector<std::vector<ExactComplex>> rows);
/// Number of singular values above rel_threshold * largest singular value.
std::size_t float_rank(const std::vector<std::vector<Complex>>& rows, double rel_threshold = 1e-9);

struct BoundEstimate {
  double lower = 0.0;  // sampled min of max_{j in I} |P_j(z)| over ||z|| = 1
  double upper = 0.0;  // sampled max
  std::size_t sample_count = 0;
};

/// Sampled bracket of the constants C1 <= max_{j in I}|P_j(z)| <= C2 on the unit
/// sphere of C^{m+1}. The sample sequence is prefix-stable, so lower is
/// nonincreasing and upper nondecreasing in sample_budget.
BoundEstimate bounding_constants(const DivisorSystem& system, std::span<const std::size_t> subset,
                                 std::size_t sample_budget, std::uint64_t seed = 0);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

}  // namespace hcurve
