#pragma once

// Static potentials on radial metrics: residuals of ∇²V = V Ric and ΔV = 0,
// the boundary normal derivative of an equipotential V, the Smarr flux, and
// the rigidity argument m = (1-α) C for equipotential boundaries.

#include <vector>

#include "capmass/capacity.hpp"
#include "capmass/geom_core.hpp"
#include "capmass/schwarzschild.hpp"

namespace capmass {

struct StaticTriple {
  RadialMetric metric;
  UnitField potential;  // V, tending to 1 at infinity
  double alpha_boundary = 0.0;  // V(r0)

  StaticTriple(RadialMetric metric, UnitField potential);
};

/// Exterior of Schwarzschild with V_m.
StaticTriple schwarzschild_triple(const SchwarzschildData& data);

/// V = 1 + (α-1)Φ for a capacitor Φ; static only when g is Schwarzschild.
StaticTriple potential_triple(const RadialMetric& metric, const CapacitySolution& phi, double alpha);

struct StaticOptions {
  int samples = 400;             // log grid on [r0, span * r0]
  double span = 100.0;
  double log_step = 1e-3;        // finite-difference step in log r
  double radius_factor = 1e5;    // expansion-mass extraction radius / r0
  double tolerance = 1e-8;       // extrapolation and flux agreement
};

struct StaticResiduals {
  double hessian_radial = 0.0;      // sup r^2 |∇²V(∂r,∂r) - V Ric(∂r,∂r)| / g_rr
  double hessian_tangential = 0.0;  // same for a unit tangential direction
  double hessian_residual = 0.0;    // max of the two
  double laplace_residual = 0.0;    // sup r^2 |Δ_g V|
  double smarr_mass = 0.0;
  double expansion_mass = 0.0;      // lim r^{n-2}(1 - V), NaN when unstable
  bool expansion_stable = false;
};

/// Does not throw on a non-static pair; only FluxDrift propagates.
StaticResiduals static_residuals(const StaticTriple& triple, const StaticOptions& options = {});

/// Mass from the flux of V through the given coordinate spheres. Throws
/// FluxDrift if the fluxes differ by more than `tolerance` relative.
double smarr_integral(const StaticTriple& triple, const std::vector<double>& radii, double tolerance = 1e-8);
/// Radii r0 * 2^k, k = 0..7.
std::vector<double> default_flux_radii(double r0);

struct NormalDerivative {
  double predicted = 0.0;  // ½((n-2)/(n-1))(f-1) H V(r0), f = ((n-1)/(n-2)) S / H^2
  double actual = 0.0;     // ∂V/∂ν at r0
};

/// Throws ZeroMeanCurvature when H = 0.
NormalDerivative lemma1_normal_derivative(const StaticTriple& triple);

struct GaussStep {
  double twice_ric_normal = 0.0;  // 2 Ric(ν,ν) from the conformal formulas
  double gauss_side = 0.0;        // R + ((n-2)/(n-1)) H^2 - S - |O|^2
  double residual = 0.0;
};

/// Contracted Gauss equation on the coordinate sphere of radius r.
GaussStep gauss_step(const RadialMetric& metric, double r, double log_step = 1e-3);

struct RigidityOptions {
  StaticOptions statics{};
  double static_tolerance = 1e-6;   // NotStatic beyond this residual
  double equality_tolerance = 1e-8; // relative to max(1, m)
  QuadratureOptions quadrature{};
  AdmOptions adm{};
};

struct RigidityReport {
  double alpha = 0.0;
  double mean_curvature = 0.0;
  double c = 0.0;
  double mass_smarr = 0.0;
  double mass_boundary = 0.0;     // (α/2)((c-1)/((n-1)ω)) ∫_Σ H dσ
  double mass_adm = 0.0;
  double capacity_potential = 0.0;   // from Φ = (1-V)/(1-α)
  double capacity_quadrature = 0.0;
  double gap = 0.0;                  // m - (1-α) C
  StaticResiduals residuals;
  SchwarzschildData reconstructed;
};

/// Throws NotStatic, AlphaOutOfRange, ZeroMeanCurvature, InvalidArgument
/// (c <= 1) or EqualityGapExceeded.
RigidityReport rigidity_pipeline(const StaticTriple& triple, const RigidityOptions& options = {});

}  // namespace capmass
