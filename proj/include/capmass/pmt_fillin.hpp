#pragma once

// Round-sphere boundary criteria for positive mass theorems with boundary:
// Dirac eigenvalue bounds, the conical fill-in and its scalar curvature, and
// the Euclidean Gauss identity.

#include "capmass/geom_core.hpp"

namespace capmass {

struct DiracCheck {
  double lambda1 = 0.0;          // (n-1)/(2ρ) on the round (n-1)-sphere
  double friedrich_bound = 0.0;  // sqrt((n-1) S / (4(n-2)))
  bool herzlich_ok = false;      // λ1 >= H/2
  bool friedrich_ok = false;     // friedrich_bound >= H/2
  bool hypothesis = false;       // S >= ((n-2)/(n-1)) H^2
};

DiracCheck dirac_eigenvalue_check(const BoundaryGeometry& boundary, Dimension n);

/// Ω = (0, a] × Σ with g̃ = dr² + (r/a)² γ and a = (n-1)/H.
struct ConicalFillIn {
  Dimension n{3};
  BoundaryGeometry boundary;
  double cone_r0 = 0.0;
  double slice_radius = 0.0;           // induced radius of {r = a}
  double slice_mean_curvature = 0.0;   // mean curvature of {r = a}

  double warp(double r) const { return r / cone_r0; }
  double warp_derivative() const { return 1.0 / cone_r0; }
  /// Warped-product scalar curvature at r ∈ (0, a].
  double scalar_curvature(double r) const;
  /// a² r^{-2} (S - (n-1)(n-2)/a²).
  double scalar_curvature_closed(double r) const;
  /// Sign of R̃, the same at every r; zero within 1e-12 relative of flat.
  int scalar_curvature_sign() const;
  /// S >= ((n-2)/(n-1)) H^2.
  bool hypothesis() const;
};

/// Throws ZeroMeanCurvature unless H > 0.
ConicalFillIn conical_fillin(const BoundaryGeometry& boundary, Dimension n);

struct EuclideanGauss {
  double h0 = 0.0;         // sqrt(((n-1)/(n-2)) S)
  double residual = 0.0;   // |S - ((n-2)/(n-1)) H0^2|
  bool dominates = false;  // H0 >= H
};

/// Throws NegativeScalarCurvature if S < 0.
EuclideanGauss euclidean_gauss_identity(const BoundaryGeometry& boundary, Dimension n);

}  // namespace capmass
