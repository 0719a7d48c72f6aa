#pragma once

// Conformally flat, rotationally symmetric metrics g = u^{4/(n-2)} δ on
// {r >= r0} ⊂ R^n, their boundary geometry, scalar curvature and ADM mass.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "capmass/radial.hpp"

namespace capmass {

/// Manifold dimension n >= 3.
class Dimension {
 public:
  explicit Dimension(int n);

  int value() const noexcept { return n_; }
  double real() const noexcept { return static_cast<double>(n_); }
  /// (n-2)/(n-1), the factor relating S to H^2 on round spheres.
  double gauss_ratio() const noexcept { return (n_ - 2.0) / (n_ - 1.0); }

  friend bool operator==(Dimension a, Dimension b) { return a.n_ == b.n_; }

 private:
  int n_;
};

/// Volume ω_{n-1} of the unit (n-1)-sphere in R^n, n >= 2.
double sphere_volume(int n);
inline double sphere_volume(Dimension n) { return sphere_volume(n.value()); }

/// One additive correction to a Schwarzschild conformal factor.
struct BumpTerm {
  enum class Kind {
    kPower,        // coef * r^{-exponent}
    kExponential,  // coef * exp(-rate r)
    kScreened,     // coef * exp(-rate r) * r^{2-n}; coef < 0 keeps u superharmonic
    kGaussian,     // coef * exp(-((r - center)/width)^2)
  };

  Kind kind = Kind::kPower;
  double coef = 0.0;
  double exponent = 0.0;
  double rate = 0.0;
  double center = 0.0;
  double width = 1.0;

  static BumpTerm power(double coef, double exponent) { return {Kind::kPower, coef, exponent}; }
  static BumpTerm exponential(double coef, double rate) {
    return {Kind::kExponential, coef, 0.0, rate};
  }
  static BumpTerm screened(double coef, double rate) { return {Kind::kScreened, coef, 0.0, rate}; }
  static BumpTerm gaussian(double coef, double center, double width) {
    return {Kind::kGaussian, coef, 0.0, 0.0, center, width};
  }

  RadialJet evaluate(Dimension n, double r) const;
};

std::string to_string(BumpTerm::Kind kind);
BumpTerm::Kind bump_kind_from_string(const std::string& name);

enum class ProfileKind { kSchwarzschild, kPerturbed, kTabulated, kProduct };

std::string to_string(ProfileKind kind);

/// Conformal factor u(r) of g = u^{4/(n-2)} δ. Immutable and cheap to copy.
class ConformalProfile {
 public:
  static ConformalProfile schwarzschild(Dimension n, double mass);
  static ConformalProfile euclidean(Dimension n) { return schwarzschild(n, 0.0); }
  static ConformalProfile perturbed(Dimension n, double mass, std::vector<BumpTerm> terms);
  /// u sampled on a log-uniform grid; derivatives from fourth-order finite
  /// differences in log r, quintic Hermite in between, and u = 1 + a r^{2-n}
  /// matched to the last node beyond the table.
  static ConformalProfile tabulated(Dimension n, std::vector<double> radii,
                                    std::vector<double> values);
  /// Pointwise product u * factor; conformal factors of successive
  /// conformal changes multiply.
  static ConformalProfile product(const ConformalProfile& base, UnitField factor);

  Dimension dimension() const noexcept { return n_; }
  ProfileKind kind() const noexcept;
  /// Schwarzschild mass parameter for closed-form and perturbed kinds.
  double mass_parameter() const;
  const std::vector<BumpTerm>& terms() const;
  /// Smallest radius at which the profile can be evaluated.
  double min_radius() const;

  /// Jet of u - 1.
  RadialJet deviation(double r) const;
  /// Sum of the magnitudes of the pieces u - 1 is assembled from; bounds
  /// the round-off in deviation(r).
  double deviation_magnitude(double r) const;
  RadialJet jet(double r) const;
  double operator()(double r) const { return 1.0 + deviation(r).value; }
  UnitField as_field() const;

 private:
  struct Schwarzschild {
    double mass;
  };
  struct Perturbed {
    double mass;
    std::vector<BumpTerm> terms;
  };
  struct Table;
  struct Tabulated {
    std::shared_ptr<const Table> table;
  };
  struct Product {
    std::shared_ptr<const ConformalProfile> base;
    UnitField factor;
  };

  ConformalProfile(Dimension n, std::variant<Schwarzschild, Perturbed, Tabulated, Product> data)
      : n_(n), data_(std::move(data)) {}

  Dimension n_;
  std::variant<Schwarzschild, Perturbed, Tabulated, Product> data_;
};

/// Exterior {r >= r0} of a rotationally symmetric conformally flat metric.
class RadialMetric {
 public:
  RadialMetric(Dimension n, double r0, ConformalProfile profile, bool spin = true);

  Dimension dimension() const noexcept { return n_; }
  double r0() const noexcept { return r0_; }
  const ConformalProfile& profile() const noexcept { return profile_; }
  /// Scenario metadata consumed by the spin-hypothesis theorem; not verified.
  bool spin() const noexcept { return spin_; }

  /// u^{2/(n-2)}: ratio between g-lengths and coordinate lengths.
  double length_scale(double r) const;
  /// d/dν of a radial function with coordinate derivative `coordinate_derivative`,
  /// ν the g-unit normal pointing to increasing r.
  double normal_derivative(double r, double coordinate_derivative) const {
    return coordinate_derivative / length_scale(r);
  }
  /// g-area of the coordinate sphere of radius r.
  double sphere_area(double r) const;

 private:
  Dimension n_;
  double r0_;
  ConformalProfile profile_;
  bool spin_;
};

/// Induced geometry of a coordinate sphere.
struct BoundaryGeometry {
  Dimension n{3};
  double induced_radius = 0.0;
  double area = 0.0;
  double scalar_curvature = 0.0;
  double mean_curvature = 0.0;
  bool umbilic = true;
  double traceless_norm = 0.0;  // |O| of the trace-free second fundamental form

  /// Round sphere of radius rho with prescribed mean curvature.
  static BoundaryGeometry round_sphere(Dimension n, double rho, double mean_curvature);
};

/// Mean curvature of {r} with respect to -ν (Euclidean spheres: H = (n-1)/r).
double sphere_mean_curvature(const RadialMetric& metric, double r);

BoundaryGeometry sphere_geometry(const RadialMetric& metric, double r);
BoundaryGeometry boundary_geometry(const RadialMetric& metric);

struct AdmOptions {
  double radius_factor = 1e3;  // extraction starts at radius_factor * r0
  double tolerance = 1e-8;
};

/// m = 2 lim r^{n-2} (u - 1). Throws SlowDecay when the extrapolation does
/// not settle, i.e. u - 1 does not decay like r^{2-n} at the sampled radii.
double adm_mass(const RadialMetric& metric, const AdmOptions& options = {});

/// Detailed form of adm_mass, exposing the fitted decay of the correction.
GeometricLimit adm_mass_fit(const RadialMetric& metric, const AdmOptions& options = {});

/// R = -4 (n-1)/(n-2) u^{-(n+2)/(n-2)} (u'' + (n-1) u'/r).
double scalar_curvature(const RadialMetric& metric, double r);

}  // namespace capmass
