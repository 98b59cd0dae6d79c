#include <cmath>
#include <vector>

#include "doctest.h"

#include "hcurve/lowdisc.hpp"
#include "hcurve/potential.hpp"
#include "hcurve/selection.hpp"

using namespace hcurve;

TEST_SUITE("potential") {

TEST_CASE("green mass of the exp line") {
  Curve curve(exp_line_curve());
  // strip integral of (1/2pi) 2e^{2x}/(1+e^{2x})^2 over the disc, 30 digits
  CHECK(disc_mass_curve(curve, {{0.0, 0.0}, 10.0}) == doctest::Approx(3.169891).epsilon(1e-4));
  CHECK(disc_mass_curve(curve, {{100.0, 0.0}, 1.0}) <= 1e-6);
  CHECK(disc_mass_curve(Curve(constant_curve({1.0, 2.0})), {{3.0, 1.0}, 5.0}) == 0.0);
}

TEST_CASE("green mass of log|z|^2 style potentials") {
  // u = log|z - 1| carries a unit atom at 1
  Potential u = [](Complex z) { return std::log(std::abs(z - 1.0)); };
  CHECK(green_disc_mass(u, {{0.0, 0.0}, 3.0}).mass == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(green_disc_mass(u, {{0.0, 0.0}, 0.5}).mass == doctest::Approx(0.0).epsilon(1e-8));
  // u = |z|^2 / 4 has density 1/(2pi)
  Potential q = [](Complex z) { return std::norm(z) / 4.0; };
  CHECK(green_disc_mass(q, {{1.0, 1.0}, 2.0}).mass == doctest::Approx(2.0 * 2.0 / 2.0).epsilon(1e-6));
}

TEST_CASE("green settings are validated") {
  Potential u = [](Complex) { return 0.0; };
  GreenSettings bad;
  bad.nodes = 16;
  CHECK_THROWS_AS(green_disc_mass(u, {{0.0, 0.0}, 1.0}, bad), ValidationError);
  CHECK_THROWS_AS(green_disc_mass(u, {{0.0, 0.0}, -1.0}), ValidationError);
}

TEST_CASE("curve masses are monotone and nonnegative") {
  for (const auto& spec : {exp_line_curve(), sine_symmetric_curve(3)}) {
    Curve curve(spec);
    double prev = 0.0;
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0, 12.0}) {
      GreenSettings gs;
      auto res = green_disc_mass([&](Complex z) { return curve.u(z); }, {{0.3, 0.2}, r}, gs);
      CHECK(res.raw >= -1e-9 - res.tolerance);
      CHECK(res.mass >= prev * (1.0 - 1e-6) - 1e-9);
      prev = res.mass;
    }
  }
}

TEST_CASE("boundary characteristic") {
  CHECK(std::abs(characteristic_boundary(Curve(constant_curve({1.0, 2.0})), 7.0)) < 1e-12);
  Curve curve(exp_line_curve());
  // mean of 0.5 log(1 + e^{2r cos t}) minus 0.5 ln 2, 40 digits
  CHECK(characteristic_boundary(curve, 5.0) == doctest::Approx(1.2714970312925035).epsilon(1e-9));
  CHECK(characteristic_boundary(curve, 10.0) == doctest::Approx(2.8496538692661317).epsilon(1e-9));
  CHECK(characteristic_boundary(curve, 50.0) == doctest::Approx(15.571539014520521).epsilon(1e-9));
  // T(r) - r/pi tends to -ln2/2
  CHECK(characteristic_boundary(curve, 50.0) - 50.0 / kPi == doctest::Approx(-0.5 * std::log(2.0)).epsilon(0.01));
}

TEST_CASE("characteristic from measures") {
  CHECK(characteristic_from_measure(UniformDensity(0.0), 5.0) == 0.0);
  AtomicMeasure atom({{Complex(1.0, 0.0), 1.0}});
  CHECK(characteristic_from_measure(atom, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-3));
  CurveMeasure cm{Curve(exp_line_curve())};
  double tm = characteristic_from_measure(cm, 20.0);
  CHECK(tm == doctest::Approx(6.0261738562675177).epsilon(5e-3));
}

TEST_CASE("characteristic agrees with the integrated measure") {
  for (const auto& spec : {exp_line_curve(), sine_symmetric_curve(3)}) {
    Curve curve(spec);
    CurveMeasure cm(curve);
    for (double r : {1.0, 5.0, 20.0}) {
      double tb = characteristic_boundary(curve, r);
      double tm = characteristic_from_measure(cm, r);
      CHECK(std::abs(tb - tm) <= 0.02 * std::max(1.0, tb));
    }
  }
}

TEST_CASE("annulus profiles") {
  auto inv = annulus_profile(InverseSquareDensity(), 2.0, 0, 6);
  REQUIRE(inv.masses.size() == 7);
  for (double a : inv.masses) CHECK(a == doctest::Approx(2.0 * kPi * std::log(2.0)).epsilon(1e-12));

  auto leb = annulus_profile(UniformDensity(1.0), 2.0, 0, 5);
  for (std::size_t k = 0; k < leb.masses.size(); ++k) {
    CHECK(leb.masses[k] == doctest::Approx(3.0 * kPi * std::pow(4.0, static_cast<double>(k))).epsilon(1e-12));
  }

  std::vector<Atom> atoms;
  for (int k = 0; k <= 8; ++k) atoms.push_back({Complex(std::pow(4.0, k), 0.0), std::pow(2.0, k)});
  auto at = annulus_profile(AtomicMeasure(atoms), 4.0, 0, 6);
  for (std::size_t k = 0; k < at.masses.size(); ++k) CHECK(at.masses[k] == std::pow(2.0, static_cast<double>(k)));
  CHECK(at.index(3) == 3);
}

TEST_CASE("measure oracles") {
  // polar integral of 1/s over the chord angle, 30 digits
  CHECK(InverseSquareDensity().mass({{3.0, 0.0}, 1.0}) == doctest::Approx(0.37002631953559893).epsilon(1e-9));
  CHECK(InverseSquareDensity().mass({{0.0, 0.0}, 1.0}) == kInf);
  CHECK(InverseSquareDensity(1.0).mass({{0.0, 0.0}, 4.0}) == doctest::Approx(2.0 * kPi * std::log(4.0)).epsilon(1e-12));

  GaussianBump g({0.0, 0.0}, 5.0, 1.0);
  CHECK(g.mass({{0.0, 0.0}, 2.0}) == doctest::Approx(5.0 * (1.0 - std::exp(-2.0))).epsilon(1e-12));
  // Rice integral, 30 digits
  CHECK(g.mass({{1.0, 0.0}, 1.0}) == doctest::Approx(1.3356009810158989).epsilon(1e-8));

  UniformDensity patch(2.0, {{0.0, 0.0}, 1.0});
  CHECK(patch.mass({{0.0, 0.0}, 5.0}) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(patch.mass({{3.0, 0.0}, 1.0}) == 0.0);

  MixtureMeasure mix({std::make_shared<GaussianBump>(g), std::make_shared<UniformDensity>(patch)});
  CHECK(mix.mass({{0.0, 0.0}, 2.0}) == doctest::Approx(5.0 * (1.0 - std::exp(-2.0)) + 2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("pushforward is scale-equivariant") {
  auto inner = std::make_shared<GaussianBump>(Complex(1.0, 2.0), 3.0, 0.7);
  Complex scale = std::polar(2.5, 0.4);
  PushforwardMeasure pf(inner, scale);
  for (Complex c : quasi_random_disc_points({{0.0, 0.0}, 6.0}, 50, 3)) {
    Disc d{c, 1.3};
    Disc back{c / scale, 1.3 / std::abs(scale)};
    CHECK(pf.mass(d) == doctest::Approx(inner->mass(back)).epsilon(1e-12));
  }
  PushforwardMeasure inv(std::make_shared<InverseSquareDensity>(), 3.0);
  CHECK(inv.annulus_mass(2.0, 8.0) == doctest::Approx(2.0 * kPi * std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("harmonic majorant") {
  Curve flat(constant_curve({1.0, 2.0}));
  auto hm = harmonic_majorant(flat, {{1.0, 1.0}, 3.0});
  CHECK(hm(Complex(1.5, 0.0)) == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-12));

  Potential logz = [](Complex z) { return std::log(std::abs(z)); };
  HarmonicMajorant m(logz, {{0.0, 0.0}, 2.0});
  for (Complex z : quasi_random_disc_points({{0.0, 0.0}, 1.9}, 100, 1)) {
    CHECK(m(z) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(logz(z) - m(z) <= 0.0);
  }

  Curve curve(exp_line_curve());
  auto em = harmonic_majorant(curve, {{0.0, 0.0}, 4.0});
  // boundary mean of 0.5 log(1 + e^{8 cos t}), 40 digits
  CHECK(em(0.0) == doctest::Approx(1.3066818751107114).epsilon(1e-10));
  for (Complex z : quasi_random_disc_points({{0.0, 0.0}, 3.9}, 1000, 2)) CHECK(em(z) >= curve.u(z) - 1e-6);
}

TEST_CASE("rescaled potential of a selected disc") {
  Curve curve(exp_line_curve());
  CurveMeasure cm(curve);
  SelectionParams p;
  p.R = 32.0;
  auto rec = select_disc(cm, p);
  RescaledPotential rp(curve, rec);
  for (Complex zeta : quasi_random_disc_points({{0.0, 0.0}, 1.95}, 300, 6)) CHECK(rp(zeta) <= 1e-3);
  double mass = rp.riesz_mass();
  CHECK(mass >= 0.0);
  CHECK(mass <= 201.0);

  Curve flat(constant_curve({1.0, 2.0}));
  DiscRecord r{{5.0, 5.0}, 1.0, 1.0, 1.0, 0.14, 8.0};
  RescaledPotential zero(flat, r);
  CHECK(std::abs(zero(Complex(0.3, -0.2))) < 1e-12);
}

}
