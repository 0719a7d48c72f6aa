#pragma once

// Closed forms for the exterior {r >= r0} of the Riemannian Schwarzschild
// manifold g_m = (1 + m/(2 r^{n-2}))^{4/(n-2)} δ. These are the exact
// references for every numerical route in the library.

#include "capmass/geom_core.hpp"

namespace capmass {

struct SchwarzschildData {
  Dimension n{3};
  double mass = 0.0;
  double r0 = 1.0;

  SchwarzschildData() = default;
  /// Validates r0 > r_* = (|m|/2)^{1/(n-2)} when m < 0.
  SchwarzschildData(Dimension n, double mass, double r0);

  /// x = m / (2 r0^{n-2}).
  double mass_ratio() const;
  RadialMetric metric() const;
};

struct SchwarzschildReport {
  double rho = 0.0;           // induced radius of the boundary sphere
  double mean_curvature = 0.0;
  double scalar_curvature = 0.0;
  double normal_derivative = 0.0;  // ∂Φ/∂ν on the boundary
  double lambda = 0.0;
  double capacity = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double boundary_potential = 0.0;  // V_m(r0)
};

/// Throws DegenerateHorizon at x = 1 (minimal boundary, Λ and c undefined).
SchwarzschildReport schwarzschild_report(const SchwarzschildData& d);

/// Φ(r) = (1+x) (1 + m/(2r^{n-2}))^{-1} (r0/r)^{n-2}.
double capacity_potential(const SchwarzschildData& d, double r);
RadialJet capacity_potential_jet(const SchwarzschildData& d, double r);

/// V_m(r) = (1 - m/(2r^{n-2})) / (1 + m/(2r^{n-2})).
double static_potential(const SchwarzschildData& d, double r);
/// V_m as a unit field; its deviation -2y/(1+y), y = m/(2r^{n-2}), stays
/// accurate far out.
UnitField static_potential_field(Dimension n, double mass);

/// Coordinate radius of the photon sphere, where c = n/(n-2):
/// r_S^{n-2} = (m/2)(n - 1 + sqrt(n(n-2))).
double photon_sphere_radius(Dimension n, double mass);

}  // namespace capmass
