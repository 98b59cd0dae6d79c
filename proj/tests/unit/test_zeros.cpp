#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"

#include "hcurve/zeros.hpp"

using namespace hcurve;

namespace {

ContourSpec on(Complex center, double radius) {
  ContourSpec c;
  c.disc = {center, radius};
  return c;
}

DivisorSystem example_system() {
  std::vector<LinearForm> forms;
  for (auto c : std::vector<std::vector<long long>>{{1, 0, 1}, {1, 0, 2}, {1, 1, 0}, {1, 2, 0}, {0, 1, 1}, {0, 1, 2}}) {
    forms.push_back(LinearForm::from_integers({c[0], c[1], c[2]}));
  }
  return DivisorSystem(std::move(forms), 2);
}

// Damped Newton from a grid of starts; roots inside the disc, deduplicated.
std::size_t newton_roots(const std::function<Complex(Complex)>& f, const std::function<Complex(Complex)>& df,
                         const Disc& disc) {
  std::vector<Complex> roots;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Complex z = disc.center + Complex(disc.radius * (2.0 * i / (n - 1) - 1.0), disc.radius * (2.0 * k / (n - 1) - 1.0));
      bool ok = false;
      for (int it = 0; it < 200; ++it) {
        Complex fz = f(z), d = df(z);
        if (d == Complex(0.0)) break;
        Complex step = fz / d;
        double lim = 0.25 * disc.radius;
        if (std::abs(step) > lim) step *= lim / std::abs(step);
        z -= step;
        if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(z))) {
          ok = true;
          break;
        }
      }
      if (!ok || std::abs(z - disc.center) >= disc.radius) continue;
      bool seen = false;
      for (Complex r : roots) seen = seen || std::abs(r - z) < 1e-7 * std::max(1.0, std::abs(z));
      if (!seen) roots.push_back(z);
    }
  }
  return roots.size();
}

}  // namespace

TEST_SUITE("zeros") {

TEST_CASE("simple cases") {
  Curve line(polynomial_curve({{1.0}, {0.0, 1.0}}));
  CHECK(winding_count(line, LinearForm::from_integers({0, 1}), on(0.0, 1.0)).count == 1);

  Curve e(exp_line_curve());
  CHECK(winding_count(e, LinearForm::from_integers({1, -1}), on(0.0, 7.0)).count == 3);
  for (Disc d : {Disc{0.0, 7.0}, Disc{{0.0, 1000.0}, 200.0}, Disc{{-300.0, 50.0}, 250.0}}) {
    CHECK(winding_count(e, LinearForm::from_integers({0, 1}), on(d.center, d.radius)).count == 0);
  }
}

TEST_CASE("lattice counts of e^z - 1") {
  Curve e(exp_line_curve());
  auto f = LinearForm::from_integers({1, -1});
  // k with |2 pi k - c| < r
  CHECK(winding_count(e, f, on({0.0, 10.0}, 2.5)).count == 0);
  CHECK(winding_count(e, f, on({0.0, 20.0}, 5.0)).count == 1);
  CHECK(winding_count(e, f, on({0.0, 100.0}, 25.0)).count == 8);
  CHECK(winding_count(e, f, on({0.0, 1000.0}, 200.0)).count == 63);
}

TEST_CASE("components far below the form's scale still drive the rate") {
  // the form reads only e^z, which sits e^{-200} below the constant on the left half
  Curve e(exp_line_curve());
  CHECK(winding_count(e, LinearForm::from_integers({0, 1}), on({0.0, 1854.0}, 355.0)).count == 0);
  CHECK(winding_count(e, LinearForm::from_integers({0, 1}), on({-100.0, 0.0}, 300.0)).count == 0);
}

TEST_CASE("additivity over disjoint sub-discs") {
  Curve e(exp_line_curve());
  auto f = LinearForm::from_integers({1, -1});
  long big = winding_count(e, f, on({0.0, 30.0}, 20.0)).count;
  long parts = 0;
  for (double c : {15.0, 25.0, 35.0, 45.0}) parts += winding_count(e, f, on({0.0, c}, 4.9)).count;
  CHECK(big >= parts);
  // roots 2 pi k for k = 2..7 and the sub-discs catch all of them
  CHECK(big == 6);
  CHECK(parts == 6);
}

TEST_CASE("count grows with the radius") {
  Curve curve(sine_symmetric_curve(3));
  auto f = LinearForm::from_integers({1, 1, 0});
  long prev = 0;
  for (double r : {1.0, 2.5, 4.0, 6.0, 8.5, 11.0}) {
    long c = winding_count(curve, f, on(std::polar(16.0, kPi / 6.0), r)).count;
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("scaling the form leaves the count unchanged") {
  Curve curve(sine_symmetric_curve(3));
  auto sys = example_system();
  auto disc = on(std::polar(20.0, kPi / 6.0), 5.0);
  for (const auto& f : sys.forms) {
    long base = winding_count(curve, f, disc).count;
    for (Complex s : {Complex(-3.0, 0.0), std::polar(1e-5, 2.0), std::polar(1e6, -1.0)}) {
      CHECK(winding_count(curve, f.scaled(s), disc).count == base);
    }
  }
}

TEST_CASE("agreement with Newton root finding") {
  SUBCASE("(1 : z), x1") {
    auto f = [](Complex z) { return z; };
    auto df = [](Complex) { return Complex(1.0); };
    CHECK(newton_roots(f, df, {0.0, 1.0}) == 1);
  }
  SUBCASE("e^z - 1") {
    Curve e(exp_line_curve());
    auto f = [](Complex z) { return 1.0 - std::exp(z); };
    auto df = [](Complex z) { return -std::exp(z); };
    for (Disc d : {Disc{0.0, 7.0}, Disc{{0.0, 20.0}, 5.0}, Disc{{3.0, 40.0}, 9.0}}) {
      CHECK(static_cast<long>(newton_roots(f, df, d)) ==
            winding_count(e, LinearForm::from_integers({1, -1}), on(d.center, d.radius)).count);
    }
  }
  SUBCASE("example curve") {
    Curve curve(sine_symmetric_curve(3));
    Complex eps = std::polar(1.0, 2.0 * kPi / 3.0);
    auto sys = example_system();
    for (std::size_t j : {0u, 2u, 5u}) {
      auto c = sys.forms[j].coefficients();
      auto f = [&](Complex z) {
        Complex acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += c[k] * std::sin(std::pow(eps, k) * z);
        return acc;
      };
      auto df = [&](Complex z) {
        Complex acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += c[k] * std::pow(eps, k) * std::cos(std::pow(eps, k) * z);
        return acc;
      };
      for (double ray : {kPi / 6.0, kPi / 2.0}) {
        Disc d{std::polar(16.0, ray), 4.0};
        CAPTURE(j);
        CAPTURE(ray);
        CHECK(static_cast<long>(newton_roots(f, df, d)) == winding_count(curve, sys.forms[j], on(d.center, d.radius)).count);
      }
    }
  }
}

TEST_CASE("example sector tables") {
  Curve curve(sine_symmetric_curve(3));
  auto sys = example_system();
  const std::vector<double> radii{12.0, 16.0, 20.0, 24.0};
  // 200000-point phase unwrapping reference
  const long pi6[4][6] = {{0, 0, 2, 2, 0, 0}, {0, 0, 3, 3, 0, 0}, {0, 0, 3, 3, 0, 0}, {0, 0, 3, 3, 0, 0}};
  const long pi2[4][6] = {{0, 0, 0, 0, 2, 2}, {0, 0, 0, 0, 3, 3}, {0, 0, 0, 0, 3, 3}, {0, 0, 0, 0, 3, 3}};
  auto a = sector_zero_scan(curve, sys, kPi / 6.0, radii);
  auto b = sector_zero_scan(curve, sys, kPi / 2.0, radii);
  REQUIRE(a.size() == 24);
  for (std::size_t ri = 0; ri < 4; ++ri) {
    for (std::size_t fi = 0; fi < 6; ++fi) {
      const auto& ca = a[ri * 6 + fi];
      CHECK(ca.form_index == fi);
      CHECK(ca.radius == radii[ri]);
      CHECK(ca.count == pi6[ri][fi]);
      CHECK(b[ri * 6 + fi].count == pi2[ri][fi]);
    }
  }
}

TEST_CASE("exp line along the imaginary axis") {
  Curve e(exp_line_curve());
  DivisorSystem sys({LinearForm::from_integers({1, 0}), LinearForm::from_integers({0, 1}),
                     LinearForm::from_integers({1, -1})},
                    1);
  auto t = sector_zero_scan(e, sys, kPi / 2.0, {10.0, 20.0});
  CHECK(t[2].count == 0);  // no 2 pi k in (7.5, 12.5)
  CHECK(t[5].count == 1);  // 6 pi only
  CHECK(t[0].count == 0);
  CHECK(t[4].count == 0);
}

TEST_CASE("zero on the contour") {
  Curve e(exp_line_curve());
  auto f = LinearForm::from_integers({1, -1});
  // 2 pi i sits exactly on the circle
  auto zc = winding_count(e, f, on(0.0, 2.0 * kPi));
  REQUIRE(zc.jiggled_radius.has_value());
  CHECK(*zc.jiggled_radius > 2.0 * kPi);
  CHECK(zc.count == 3);

  Curve flat(constant_curve({1.0, 1.0}));
  CHECK_THROWS_AS(winding_count(flat, f, on(0.0, 1.0)), ZeroOnContourError);
}

TEST_CASE("preconditions") {
  Curve e(exp_line_curve());
  auto f = LinearForm::from_integers({1, -1});
  ContourSpec c = on(0.0, 1.0);
  c.initial_nodes = 8;
  CHECK_THROWS_AS(winding_count(e, f, c), ValidationError);
  CHECK_THROWS_AS(winding_count(e, LinearForm::from_integers({1, 0, 0}), on(0.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(sector_zero_scan(e, DivisorSystem({f, LinearForm::from_integers({1, 0})}, 1), 0.0, {5.0}, 0.3),
                  ValidationError);
}

}
