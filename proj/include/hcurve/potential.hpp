#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hcurve/common.hpp"
#include "hcurve/curve.hpp"
#include "hcurve/disc_record.hpp"

namespace hcurve {

/// A real function on (part of) the plane, typically a subharmonic potential.
using Potential = std::function<double(Complex)>;

// ---- Riesz mass through the Green identity ---------------------------------
//
// mu(D) = (1/2pi) * contour integral of du/dn over the boundary circle, with the
// radial derivative taken by central differences (Richardson-extrapolated in
// the step) and the contour integral by the trapezoid rule with node doubling.

struct GreenSettings {
  std::size_t nodes = 64;  // initial node count K, >= 64
  int max_doublings = 6;
  double rel_tol = 1e-3;
  double step = 0.0;  // radial step h; 0 selects radius * 1e-4 clamped to [1e-8, 1e-2]
};

struct GreenResult {
  double mass = 0.0;      // clamped at 0 when |raw| is within the noise tolerance
  double raw = 0.0;       // extrapolated value before clamping
  double tolerance = 0.0; // absolute tolerance used for convergence and clamping
  std::size_t nodes = 0;
  double step = 0.0;
};

GreenResult green_disc_mass(const Potential& u, const Disc& disc, const GreenSettings& settings = {});

double disc_mass_curve(const Curve& curve, const Disc& disc, std::size_t nodes = 64, double step = 0.0);

// ---- measure oracles --------------------------------------------------------

class MeasureOracle {
 public:
  virtual ~MeasureOracle() = default;

  /// mu(D(center, radius)) for the open disc; may be +inf.
  virtual double mass(const Disc& disc) const = 0;

  /// mu of the annulus inner <= |z| <= outer. The default is the difference of
  /// the two centred disc masses, clamped at 0.
  virtual double annulus_mass(double inner, double outer) const;

  /// Radii at which t -> mu(D(0, t)) jumps (atoms). Empty for measures with densities.
  virtual std::vector<double> radial_jumps() const { return {}; }

  virtual std::string kind() const = 0;
};

using MeasurePtr = std::shared_ptr<const MeasureOracle>;

/// Riesz measure (1/2pi) Laplacian of u = log||F|| for a curve F.
class CurveMeasure final : public MeasureOracle {
 public:
  explicit CurveMeasure(Curve curve, GreenSettings settings = {});
  double mass(const Disc& disc) const override;
  std::string kind() const override { return "curve"; }
  const Curve& curve() const { return curve_; }
  const GreenSettings& settings() const { return settings_; }

 private:
  Curve curve_;
  GreenSettings settings_;
};

/// dx dy / (x^2 + y^2), optionally restricted to |z| >= cutoff. Every annulus
/// {t^m <= |z| <= t^{m+1}} carries 2 pi ln t.
class InverseSquareDensity final : public MeasureOracle {
 public:
  explicit InverseSquareDensity(double cutoff = 0.0);
  double mass(const Disc& disc) const override;
  double annulus_mass(double inner, double outer) const override;
  std::string kind() const override { return "inverse_square"; }
  double cutoff() const { return cutoff_; }

 private:
  double cutoff_;
};

/// Constant density on a disc; an infinite support radius is planar Lebesgue measure.
class UniformDensity final : public MeasureOracle {
 public:
  UniformDensity(double density, Disc support = {{0.0, 0.0}, kInf});
  double mass(const Disc& disc) const override;
  std::string kind() const override { return "lebesgue"; }

 private:
  double density_;
  Disc support_;
};

/// Isotropic Gaussian bump of the given total mass.
class GaussianBump final : public MeasureOracle {
 public:
  GaussianBump(Complex center, double total_mass, double sigma);
  double mass(const Disc& disc) const override;
  std::string kind() const override { return "gaussian"; }

 private:
  Complex center_;
  double total_;
  double sigma_;
};

struct Atom {
  Complex point;
  double mass;
};

class AtomicMeasure final : public MeasureOracle {
 public:
  explicit AtomicMeasure(std::vector<Atom> atoms);
  double mass(const Disc& disc) const override;
  std::vector<double> radial_jumps() const override;
  std::string kind() const override { return "atomic"; }
  double total() const;
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> xs_, ys_, ws_;
};

class MixtureMeasure final : public MeasureOracle {
 public:
  explicit MixtureMeasure(std::vector<MeasurePtr> parts);
  double mass(const Disc& disc) const override;
  double annulus_mass(double inner, double outer) const override;
  std::vector<double> radial_jumps() const override;
  std::string kind() const override { return "mixture"; }

 private:
  std::vector<MeasurePtr> parts_;
};

/// Push-forward of a measure under z -> scale * z.
class PushforwardMeasure final : public MeasureOracle {
 public:
  PushforwardMeasure(MeasurePtr inner, Complex scale);
  double mass(const Disc& disc) const override;
  double annulus_mass(double inner, double outer) const override;
  std::vector<double> radial_jumps() const override;
  std::string kind() const override { return "pushforward"; }

 private:
  MeasurePtr inner_;
  Complex scale_;
};

// ---- characteristic and annulus profile -------------------------------------

/// (1/2pi) int u(r e^{it}) dt - u(0) by the trapezoid rule.
double characteristic_boundary(const Curve& curve, double r, std::size_t nodes = 4096);

/// int_{r 1e-6}^{r} mu(D(0,t)) dt / t, adaptive Gauss-Kronrod in log t with
/// panels split at the oracle's radial jumps.
double characteristic_from_measure(const MeasureOracle& oracle, double r, std::size_t quad_points = 64);

struct AnnulusProfile {
  double t = 2.0;
  int first_index = 0;          // m of masses[0]
  std::vector<double> masses;   // A_m = mu({t^m <= |z| <= t^{m+1}})

  int index(std::size_t k) const { return first_index + static_cast<int>(k); }
};

AnnulusProfile annulus_profile(const MeasureOracle& oracle, double t, int m_first, int m_last);

// ---- harmonic majorant and rescaled potentials ----------------------------

/// Poisson integral of the boundary values of u on a disc: the smallest
/// harmonic majorant of a subharmonic u that is continuous up to the boundary.
class HarmonicMajorant {
 public:
  HarmonicMajorant(const Potential& u, const Disc& disc, std::size_t boundary_nodes = 2048);

  double operator()(Complex z) const;
  const Disc& disc() const { return disc_; }

 private:
  Disc disc_;
  std::vector<double> values_, cos_, sin_;
};

HarmonicMajorant harmonic_majorant(const Curve& curve, const Disc& disc, std::size_t boundary_nodes = 2048);

/// zeta -> (u(a + r zeta) - u~(a + r zeta)) / M on D(0,2), where u~ is the
/// harmonic majorant of u on D(a, 2r) and (a, r, M) come from a disc record.
class RescaledPotential {
 public:
  RescaledPotential(const Curve& curve, const DiscRecord& record, std::size_t boundary_nodes = 2048);

  double operator()(Complex zeta) const;

  /// Riesz mass of the rescaled function over D(0, radius), radius < 2.
  double riesz_mass(double radius = 1.9, const GreenSettings& settings = {}) const;

 private:
  Curve curve_;
  DiscRecord record_;
  HarmonicMajorant majorant_;
};

}  // namespace hcurve
