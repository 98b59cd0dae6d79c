#include <cmath>
#include <vector>

#include "doctest.h"

#include "hcurve/curve.hpp"
#include "hcurve/lowdisc.hpp"

using namespace hcurve;

namespace {

DivisorSystem example_system() {
  std::vector<LinearForm> forms;
  for (auto c : std::vector<std::vector<long long>>{{1, 0, 1}, {1, 0, 2}, {1, 1, 0}, {1, 2, 0}, {0, 1, 1}, {0, 1, 2}}) {
    forms.push_back(LinearForm::from_integers({c[0], c[1], c[2]}));
  }
  return DivisorSystem(std::move(forms), 2);
}

DivisorSystem line_system() {
  return DivisorSystem({LinearForm::from_integers({1, 0}), LinearForm::from_integers({0, 1}),
                        LinearForm::from_integers({1, -1})},
                       1);
}

double direction_norm(const CurveSample& s) {
  double acc = 0.0;
  for (auto c : s.direction) acc += std::norm(c);
  return std::sqrt(acc);
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("exp line at the origin") {
  auto s = eval_curve(exp_line_curve(), 0.0);
  REQUIRE(s.direction.size() == 2);
  CHECK(s.log_norm == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(s.direction[0] - Complex(M_SQRT1_2, 0.0)) < 1e-15);
  CHECK(std::abs(s.direction[1] - Complex(M_SQRT1_2, 0.0)) < 1e-15);
}

TEST_CASE("exp line far out") {
  // 0.5 log(1 + e^20), 40-digit reference
  CHECK(eval_u(exp_line_curve(), 10.0) == doctest::Approx(10.000000001030577).epsilon(1e-15));
  // beyond double range of e^z
  auto s = eval_curve(exp_line_curve(), Complex(800.0, 3.0));
  CHECK(std::isfinite(s.log_norm));
  CHECK(s.log_norm == doctest::Approx(800.0).epsilon(1e-15));
  CHECK(direction_norm(s) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::arg(s.direction[1]) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eval_u(exp_line_curve(), -900.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sine-symmetric curve at the origin") {
  auto s = eval_curve(sine_symmetric_curve(3), 0.0);
  CHECK(s.log_norm == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  Complex eps = std::polar(1.0, 2.0 * kPi / 3.0);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(s.direction[j] - std::pow(eps, j) / std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("sine-symmetric reference values") {
  auto spec = sine_symmetric_curve(3);
  // 40-digit references
  CHECK(eval_u(spec, Complex(0.0, 10.0)) == doctest::Approx(7.004313122081835).epsilon(1e-13));
  auto z = std::polar(5.0, kPi / 6.0);
  CHECK(eval_uj(spec, LinearForm::from_integers({1, 0, 1}), z) == doctest::Approx(2.730091648773546).epsilon(1e-12));
  // overflow-safe far from the origin
  double far = eval_u(spec, Complex(0.0, 900.0));
  CHECK(std::isfinite(far));
  CHECK(far == doctest::Approx(900.0 - std::log(2.0 * 900.0) + 0.5 * std::log(1.0 + 2.0 * std::exp(-900.0 * 3.0))).epsilon(1e-3));
}

TEST_CASE("constant curve") {
  auto spec = constant_curve({1.0, 2.0});
  for (Complex z : {Complex(0.0), Complex(3.0, -4.0), Complex(-100.0, 7.0)}) {
    CHECK(eval_u(spec, z) == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-15));
  }
}

TEST_CASE("polynomial and composed families") {
  auto poly = polynomial_curve({{1.0}, {0.0, 0.0, 1.0}});  // (1 : z^2)
  CHECK(eval_u(poly, 3.0) == doctest::Approx(0.5 * std::log(82.0)).epsilon(1e-14));
  auto comp = composed_curve(PolynomialMap{{0.0, 0.0, 1.0}}, exp_line_curve());  // (1 : e^{z^2})
  CHECK(eval_u(comp, 3.0) == doctest::Approx(0.5 * std::log1p(std::exp(18.0))).epsilon(1e-14));
  auto comp2 = composed_curve(ExponentialMap{1.0, 0.0}, poly);  // (1 : e^{2z})
  CHECK(eval_u(comp2, 1.5) == doctest::Approx(0.5 * std::log1p(std::exp(6.0))).epsilon(1e-14));
  CHECK(comp.ambient_dim() == 1);
}

TEST_CASE("u_j of the exp line") {
  auto spec = exp_line_curve();
  for (Complex z : {Complex(0.0), Complex(5.0, 1.0), Complex(-3.0, 9.0)}) {
    CHECK(std::abs(eval_uj(spec, LinearForm::from_integers({1, 0}), z)) < 1e-14);
  }
  double at_zero = eval_uj(spec, LinearForm::from_integers({1, -1}), Complex(0.0, 2.0 * kPi));
  CHECK((at_zero == -kInf || at_zero < -30.0));
  CHECK(eval_uj(spec, LinearForm::from_integers({1, -1}), Complex(0.0, 0.0)) == -kInf);
  CHECK_THROWS_AS(eval_uj(spec, LinearForm::from_integers({1, 0, 1}), 0.0), ValidationError);
}

TEST_CASE("u_j obeys Cauchy-Schwarz") {
  auto sys = example_system();
  Curve curve(sine_symmetric_curve(3));
  for (Complex z : quasi_random_disc_points({{0.0, 0.0}, 40.0}, 300, 5)) {
    double u = curve.u(z);
    for (const auto& f : sys.forms) CHECK(eval_uj(curve, f, z) <= u + std::log(f.norm()) + 1e-12);
  }
}

TEST_CASE("u is invariant under a common unimodular factor") {
  auto plain = exponential_curve({0.0, 1.0, Complex(0.0, 2.0)}, {0.0, 0.0, 0.3});
  auto turned = exponential_curve({0.0, 1.0, Complex(0.0, 2.0)},
                                  {Complex(0.0, 0.7), Complex(0.0, 0.7), Complex(0.3, 0.7)});
  for (Complex z : quasi_random_disc_points({{0.0, 0.0}, 30.0}, 200, 2)) {
    CHECK(std::abs(eval_u(plain, z) - eval_u(turned, z)) < 1e-12 * std::max(1.0, std::abs(eval_u(plain, z))));
  }
}

TEST_CASE("direction has unit norm") {
  for (const auto& spec : {exp_line_curve(), sine_symmetric_curve(3), sine_symmetric_curve(5)}) {
    for (Complex z : quasi_random_disc_points({{0.0, 0.0}, 200.0}, 100, 8)) {
      CHECK(direction_norm(eval_curve(spec, z)) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetry check") {
  auto spec = sine_symmetric_curve(3);
  CHECK(symmetry_check(spec, Complex(1.0, 2.0)) <= 1e-10);
  CHECK(symmetry_check(spec, 0.0) <= 1e-14);
  CHECK(symmetry_check(spec, std::polar(17.0, 0.3)) <= 1e-9);
  double worst = 0.0;
  for (Complex z : quasi_random_disc_points({{0.0, 0.0}, 50.0}, 1000, 4)) worst = std::max(worst, symmetry_check(spec, z));
  CHECK(worst <= 1e-9);
  CHECK_THROWS_AS(symmetry_check(exp_line_curve(), 1.0), ValidationError);
}

TEST_CASE("cyclic shift moves coefficients") {
  auto f = LinearForm::from_integers({1, 2, 3});
  auto g = cyclic_shift(f, 1);
  CHECK(g.coefficients()[1] == Complex(1.0));
  CHECK(g.coefficients()[2] == Complex(2.0));
  CHECK(g.coefficients()[0] == Complex(3.0));
  auto back = cyclic_shift(g, -1);
  for (int j = 0; j < 3; ++j) CHECK(back.coefficients()[j] == f.coefficients()[j]);
}

TEST_CASE("deviation scan stays within the bounding constants") {
  auto sys = line_system();
  Curve curve(exp_line_curve());
  auto samples = quasi_random_disc_points({{0.0, 0.0}, 20.0}, 800, 1);
  for (const auto& subset : combinations(3, 2)) {
    auto b = bounding_constants(sys, subset, 20000, 0);
    auto d = deviation_scan(curve, sys, subset, samples);
    // sampled constants bracket inward, so allow the sampling gap
    CHECK(d.min >= std::log(b.lower) - 0.01);
    CHECK(d.max <= std::log(b.upper) + 0.01);
    CHECK(d.min <= d.max);
  }
}

TEST_CASE("deviation of a constant curve is constant") {
  auto sys = line_system();
  Curve curve(constant_curve({1.0, 2.0}));
  std::vector<std::size_t> subset{0, 2};
  auto d = deviation_scan(curve, sys, subset, quasi_random_disc_points({{0.0, 0.0}, 20.0}, 100, 3));
  CHECK(d.max - d.min < 1e-14);
  CHECK(d.max == doctest::Approx(-0.5 * std::log(5.0)));
}

TEST_CASE("deviation of the example curve over all forms") {
  auto sys = example_system();
  Curve curve(sine_symmetric_curve(3));
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  auto d = deviation_scan(curve, sys, all, quasi_random_disc_points({{0.0, 0.0}, 30.0}, 2000, 0));
  // any n+1 forms already bound the maximum from below
  CHECK(d.min > std::log(0.5773) - 1e-9);
  CHECK(d.max <= std::log(std::sqrt(5.0)) + 1e-9);
  // 3001^2 grid on |z| <= 30: window [-0.34622, 0.80472]
  CHECK(d.min >= -0.34622 - 1e-4);
  CHECK(d.max <= 0.80472 + 1e-5);
  CHECK(d.max - d.min > 1.0);
}

TEST_CASE("caller-supplied evaluator") {
  Curve curve(1, [](Complex z) {
    CurveSample s;
    s.direction = {Complex(M_SQRT1_2), std::polar(M_SQRT1_2, z.imag())};
    s.log_norm = 0.0;
    return s;
  });
  CHECK(curve.component_count() == 2);
  CHECK(curve.u(Complex(3.0, 1.0)) == 0.0);
  CHECK(curve.spec() == nullptr);
}

}
