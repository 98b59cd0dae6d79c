#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"

#include "hcurve/lowdisc.hpp"
#include "hcurve/selection.hpp"

using namespace hcurve;

namespace {

void check_certificate(const MeasureOracle& oracle, const DiscRecord& rec, Complex origin = {0.0, 0.0}) {
  CHECK(rec.doubling_ratio <= kDoublingBound);
  double central = oracle.mass({origin, rec.governing_radius / 4.0});
  CHECK(rec.mass >= 0.5 * central * (1.0 - 1e-3));
  CHECK(oracle.mass(rec.disc()) == doctest::Approx(rec.mass).epsilon(1e-9));
}

std::shared_ptr<AtomicMeasure> geometric_atoms() {
  std::vector<Atom> atoms;
  for (int k = 0; k <= 8; ++k) atoms.push_back({Complex(std::pow(4.0, k), 0.0), std::pow(2.0, k)});
  return std::make_shared<AtomicMeasure>(atoms);
}

}  // namespace

TEST_SUITE("selection") {

TEST_CASE("uniform unit disc") {
  UniformDensity u(1.0, {{0.0, 0.0}, 1.0});
  SelectionParams p;
  p.R = 8.0;
  auto rec = select_disc(u, p);
  CHECK(std::abs(rec.center) < 0.5);
  CHECK(rec.mass == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(rec.doubling_ratio == doctest::Approx(1.0).epsilon(1e-9));
  check_certificate(u, rec);
}

TEST_CASE("single atom at the origin") {
  AtomicMeasure a({{Complex(0.0, 0.0), 5.0}});
  SelectionParams p;
  p.R = 8.0;
  auto rec = select_disc(a, p);
  CHECK(std::abs(rec.center) < rec.radius);
  CHECK(rec.mass >= 2.5);
  check_certificate(a, rec);
}

TEST_CASE("inverse-square density with a cutoff") {
  InverseSquareDensity d(1.0);
  SelectionParams p;
  p.R = 64.0;
  auto rec = select_disc(d, p);
  CHECK(rec.doubling_ratio <= 200.0);
  check_certificate(d, rec);
}

TEST_CASE("selection preconditions") {
  UniformDensity u(1.0);
  SelectionParams p;
  p.grid_density = 50;
  CHECK_THROWS_AS(select_disc(u, p), ValidationError);
  p.grid_density = 200;
  p.R = -1.0;
  CHECK_THROWS_AS(select_disc(u, p), ValidationError);
}

TEST_CASE("polar scan grid stays inside the disc") {
  SelectionParams p;
  p.R = 10.0;
  p.origin = {3.0, -2.0};
  auto grid = polar_scan_grid(p, 200);
  CHECK(grid.size() >= 100);
  for (Complex z : grid) CHECK(std::abs(z - p.origin) < p.R);
}

TEST_CASE("disc sequence on geometric atoms") {
  auto atoms = geometric_atoms();
  auto seq = select_disc_sequence(*atoms, {16.0, 64.0, 256.0, 1024.0});
  REQUIRE(seq.records.size() == 4);
  CHECK_FALSE(seq.finite_measure);
  const double floor[] = {1.0, 2.0, 4.0, 8.0};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(seq.records[k].mass >= floor[k]);
    check_certificate(*atoms, seq.records[k]);
  }
}

TEST_CASE("disc sequence detects finite measures") {
  UniformDensity u(1.0, {{0.0, 0.0}, 1.0});
  auto seq = select_disc_sequence(u, {8.0, 16.0, 32.0, 64.0});
  CHECK(seq.finite_measure);
  CHECK(seq.plateau_index.has_value());
}

TEST_CASE("disc sequence on the exp line") {
  CurveMeasure cm{Curve(exp_line_curve())};
  auto seq = select_disc_sequence(cm, {8.0, 16.0, 32.0, 64.0});
  REQUIRE(seq.records.size() == 4);
  REQUIRE(seq.central_masses.size() == 4);
  // strip integral of the Riesz density over D(0, R/4), 25 digits
  const double central[] = {0.55897091867, 1.23811224999, 2.52987971525, 5.08474891325};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(seq.central_masses[k] == doctest::Approx(central[k]).epsilon(2e-3));
    check_certificate(cm, seq.records[k]);
  }
}

TEST_CASE("selection is scale-equivariant") {
  auto inner = std::make_shared<GaussianBump>(Complex(2.0, 1.0), 4.0, 0.8);
  SelectionParams p;
  p.R = 12.0;
  auto base = select_disc(*inner, p);

  // a real dilation maps the polar grid onto itself
  PushforwardMeasure dil(inner, 3.0);
  SelectionParams q = p;
  q.R = 3.0 * p.R;
  auto moved = select_disc(dil, q);
  CHECK(moved.mass == doctest::Approx(base.mass).epsilon(1e-9));
  CHECK(std::abs(moved.center - 3.0 * base.center) <= 1e-9 * q.R);
  CHECK(moved.radius == doctest::Approx(3.0 * base.radius).epsilon(1e-9));

  // a rotation only up to grid quantization
  Complex lambda = std::polar(3.0, 0.5);
  PushforwardMeasure rot(inner, lambda);
  auto turned = select_disc(rot, q);
  CHECK(turned.mass == doctest::Approx(base.mass).epsilon(0.05));
  CHECK(std::abs(turned.center - lambda * base.center) <= 0.05 * q.R);
  CHECK(turned.radius == doctest::Approx(3.0 * base.radius).epsilon(0.05));
}

TEST_CASE("annulus cover of the exp line") {
  CurveMeasure cm{Curve(exp_line_curve())};
  auto cover = annulus_cover(cm, 2.0, 6, {});
  CHECK(cover.angular_count >= 16);
  CHECK(cover.patches.size() == cover.angular_count * cover.radial_count);
  CHECK(cover.annulus_mass > 0.0);
  for (const auto& p : cover.patches) CHECK(std::abs(p.disc.center) - p.disc.radius > 0.0);

  auto rec = select_disc_annulus(cm, 2.0, 6);
  double dir = std::arg(rec.center);
  CHECK(std::abs(std::abs(dir) - kPi / 2.0) < 15.0 * kPi / 180.0);
  CHECK(std::abs(rec.center) >= 48.0);
  CHECK(std::abs(rec.center) <= 140.0);
  CHECK(rec.doubling_ratio <= 200.0);

  auto both = select_discs_annulus(cm, 2.0, 6);
  REQUIRE(both.size() == 2);
  CHECK(std::imag(both[0].center) * std::imag(both[1].center) < 0.0);
}

TEST_CASE("annulus selection on diagonal atoms") {
  auto diagonal = [](auto mass_of, int top) {
    std::vector<Atom> atoms;
    for (int m = 1; m <= top; ++m) atoms.push_back({std::polar(std::pow(2.0, m) * 1.3, kPi / 4.0), mass_of(m)});
    return AtomicMeasure(atoms);
  };

  // A_m = m: the patch count leaves its floor of 16 only beyond m = 256
  auto slow = diagonal([](int m) { return static_cast<double>(m); }, 520);
  double prev = kInf;
  for (int m : {100, 300, 500}) {
    auto rec = select_disc_annulus(slow, 2.0, m);
    CHECK(std::abs(rec.center - std::polar(std::pow(2.0, m) * 1.3, kPi / 4.0)) < rec.radius);
    CHECK(rec.relative_radius <= prev);
    prev = rec.relative_radius;
  }
  CHECK(prev < select_disc_annulus(slow, 2.0, 100).relative_radius);

  // A_m = 4^m: sqrt(A_m) doubles per step
  auto fast = diagonal([](int m) { return std::pow(4.0, m); }, 14);
  prev = kInf;
  for (int m : {6, 8, 10, 12}) {
    auto rec = select_disc_annulus(fast, 2.0, m);
    CHECK(rec.relative_radius < prev);
    prev = rec.relative_radius;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("counterexample relative radius does not shrink") {
  InverseSquareDensity d;
  double first = select_disc_annulus(d, 2.0, 2).relative_radius;
  for (int m : {6, 10, 14}) {
    CHECK(select_disc_annulus(d, 2.0, m).relative_radius == doctest::Approx(first).epsilon(1e-6));
  }
  CHECK(first > 0.1);
}

TEST_CASE("annulus cover rejects empty annuli") {
  UniformDensity u(1.0, {{0.0, 0.0}, 1.0});
  CHECK_THROWS(annulus_cover(u, 2.0, 3, {}));
}

TEST_CASE("double-disc covers") {
  auto check_cover = [](Complex a, double R) {
    auto discs = cover_double_disc(a, R);
    CHECK(discs.size() <= kCoverLimit);
    double r = (R - std::abs(a)) / 4.0;
    for (Complex p : quasi_random_disc_points({a, 2.0 * r}, 5000, 17)) {
      bool inside = false;
      for (const auto& d : discs) inside = inside || std::abs(p - d.center) < d.radius;
      CHECK(inside);
    }
    for (const auto& d : discs) {
      CHECK(std::abs(d.center - a) < 2.0 * r);
      CHECK(d.radius == doctest::Approx((R - std::abs(d.center)) / 4.0).epsilon(1e-12));
    }
    return discs.size();
  };
  std::size_t centred = check_cover(0.0, 4.0);
  CHECK(centred >= 20);
  CHECK(centred <= 60);
  check_cover(std::polar(2.0, 1.0), 4.0);
  check_cover(std::polar(4.0 * (1.0 - 1e-6), 2.0), 4.0);
  check_cover(std::polar(300.0, -0.4), 1000.0);
}

}
