#pragma once

// Boundary capacity potential Φ (ΔΦ = 0, Φ = 1 on Σ, Φ -> 0) and capacity of
// the inner boundary of a RadialMetric.
//
// For g = u^{4/(n-2)} δ, sqrt(det g) g^{rr} = r^{n-1} u^2, so radial harmonic
// functions satisfy (r^{n-1} u^2 Φ')' = 0. Two independent routes are offered:
//   * quadrature:  Φ(r) = I(r)/I(r0), I(r) = ∫_r^∞ ds / (s^{n-1} u(s)^2),
//                  C = 1 / ((n-2) I(r0));
//   * variational: minimise the Dirichlet energy over P2 finite elements in
//                  log r with a tail-matched outer value.

#include <functional>
#include <memory>

#include "capmass/geom_core.hpp"

namespace capmass {

enum class CapacityMethod { kQuadrature, kVariational };

std::string to_string(CapacityMethod method);

class CapacitySolution {
 public:
  using PotentialFn = std::function<RadialJet(double)>;

  CapacitySolution(CapacityMethod method, Dimension n, double r0, double capacity,
                   double normal_derivative, double energy, PotentialFn potential);

  CapacityMethod method() const noexcept { return method_; }
  Dimension dimension() const noexcept { return n_; }
  double r0() const noexcept { return r0_; }
  double capacity() const noexcept { return capacity_; }
  /// ∂Φ/∂ν at r0 with respect to the g-unit normal pointing into M.
  double normal_derivative() const noexcept { return normal_derivative_; }
  /// ∫_M |∇Φ|^2 dμ.
  double energy() const noexcept { return energy_; }

  double potential(double r) const { return (*potential_)(r).value; }
  /// Φ and its coordinate derivatives.
  RadialJet potential_jet(double r) const { return (*potential_)(r); }

 private:
  CapacityMethod method_;
  Dimension n_;
  double r0_;
  double capacity_;
  double normal_derivative_;
  double energy_;
  std::shared_ptr<const PotentialFn> potential_;
};

struct QuadratureOptions {
  double cut_factor = 1e4;      // split radius R_cut = cut_factor * r0
  double panel_width = 0.02;    // panel width in log r on [r0, R_cut]
};

/// Throws DivergentIntegral when the radial integral is not finite or the
/// profile is not yet asymptotically flat at R_cut.
CapacitySolution capacity_quadrature(const RadialMetric& metric, const QuadratureOptions& options = {});

struct VariationalOptions {
  int grid_points = 2000;      // element vertices on the log grid
  double r_max_factor = 1e4;   // R_max = r_max_factor * r0
  int tail_sweeps = 2;         // fixed-point updates of the outer value
  double sweep_tolerance = 1e-8;
};

/// Throws NonConvergence when the linear solve leaves a residual or the
/// tail matching has not settled after the configured sweeps.
CapacitySolution capacity_variational(const RadialMetric& metric,
                                      const VariationalOptions& options = {});

struct ExpansionFit {
  double capacity = 0.0;
  /// Exponent k of the correction r^{n-2}Φ - C ~ r^{-k}.
  double decay_exponent = 0.0;
};

/// C = lim r^{n-2} Φ(r), extrapolated from radius_factor * r0 outwards.
ExpansionFit capacity_from_expansion(const CapacitySolution& solution, Dimension n,
                                     double radius_factor = 1e4, double tolerance = 1e-8);

/// C recomputed from the boundary flux: -(1/((n-2)ω)) ∫_Σ ∂Φ/∂ν dσ.
double capacity_from_flux(const RadialMetric& metric, const CapacitySolution& solution);

/// sup over an interior log grid of r^2 |Δ_g Φ|, with Δ_g discretised by
/// conservative second-order differences on `samples` nodes in [r0, 100 r0].
double harmonic_residual(const RadialMetric& metric, const CapacitySolution& solution,
                         int samples = 400);

}  // namespace capmass
