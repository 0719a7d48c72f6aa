#pragma once

// The conformal route from a critical capacitor to the mass bound:
// α = β/(1+β) with β = Λ/(c-1), the boundary test
// -(2α/(1+α)) ∂Φ/∂ν >= ((n-2)/(n-1)) H, the metric ḡ_α = Ψ_α^{4/(n-2)} g
// with Ψ_α = 1 - ((1-α)/2) Φ, its mass, boundary curvatures and scalar
// curvature, and the Schwarzschild reconstruction in the equality case.

#include "capmass/capacity.hpp"
#include "capmass/critical.hpp"
#include "capmass/geom_core.hpp"
#include "capmass/schwarzschild.hpp"

namespace capmass {

struct HmCondition {
  double lhs = 0.0;  // -(2α/(1+α)) ∂Φ/∂ν
  double rhs = 0.0;  // ((n-2)/(n-1)) H
  bool holds = false;
  bool equality = false;
};

/// Valid for 0 <= α <= 1. Relative slack 1e-10 so the Schwarzschild
/// equality case is recognised through quadrature round-off.
HmCondition hm_condition(const RadialMetric& metric, const CapacitySolution& solution, double alpha);

enum class AlphaBranch { kAlphaSqCGeqOne, kAlphaSqCLeqOne };

std::string to_string(AlphaBranch branch);

struct BranchSelection {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_sq_c = 0.0;
  AlphaBranch branch = AlphaBranch::kAlphaSqCGeqOne;
  /// |α²c - 1| <= 1e-10: both branches apply.
  bool on_boundary = false;
  /// c - 1 >= (1-α²)/α², the bound that turns the critical condition into
  /// the boundary test above.
  bool hm_bound = false;

  bool admits(AlphaBranch b) const { return on_boundary || branch == b; }
};

/// Throws InvalidArgument unless Λ > 0 and c > 1.
BranchSelection alpha_branch(double lambda, double c);

/// Branch of an arbitrary α ∈ (0,1) for a given c; β is left at α/(1-α).
BranchSelection classify_branch(double alpha, double c);

struct ConformalState {
  RadialMetric base;
  CapacitySolution phi;
  double alpha;
  UnitField psi;                 // Ψ_α
  RadialMetric conformal_metric; // profile u Ψ_α
  double lambda;  // 0 when H <= 0
  double c;       // 0 when H = 0
  BranchSelection branch;
  /// Λ > 0 and c > 1, so the critical-capacitor closed forms apply.
  bool critical;
};

/// Builds ḡ_α for α ∈ (0,1) (AlphaOutOfRange otherwise). Λ and c are fitted
/// from the base boundary and the branch is classified from α and c.
ConformalState conformal_transform(const RadialMetric& base, const CapacitySolution& phi, double alpha);

struct MassShift {
  double conformal_mass = 0.0;  // ADM mass of ḡ_α by direct extraction
  double predicted = 0.0;       // m - (1-α) C
  double base_mass = 0.0;
  double relative_error = 0.0;
};

MassShift mass_shift(const ConformalState& state, const AdmOptions& options = {});

/// Closed forms assume α = β/(1+β); the direct values hold for any α.
struct TransformedBoundary {
  double mean_curvature_closed = 0.0;   // 2^{2/(n-2)} (1+cα)(1+α)^{-n/(n-2)} H
  double scalar_curvature_closed = 0.0; // 2^{4/(n-2)} (1+α)^{-4/(n-2)} S
  double mean_curvature_direct = 0.0;
  double scalar_curvature_direct = 0.0;
  double psi_normal_derivative = 0.0;          // ∂Ψ_α/∂ν from Φ
  double psi_normal_derivative_closed = 0.0;   // (α(c-1)/4) ((n-2)/(n-1)) H
};

TransformedBoundary transformed_boundary(const ConformalState& state);

/// c(1+α)^2 >= (1+cα)^2, equivalent to α²c <= 1 for c > 1.
bool conformal_boundary_lemma(double c, double alpha);

struct PmtHypotheses {
  bool lemma = false;
  double lemma_lhs = 0.0;  // c(1+α)^2
  double lemma_rhs = 0.0;  // (1+cα)^2
  bool boundary = false;   // S̄ >= ((n-2)/(n-1)) H̄^2
  double min_scalar_curvature = 0.0;  // of ḡ_α on the sample grid
  bool scalar_curvature = false;
  bool holds = false;
};

/// Hypotheses of the boundary positive mass theorem for ḡ_α. Meaningful on
/// the α²c <= 1 branch; reports false components otherwise.
PmtHypotheses verify_pmt_hypotheses(const ConformalState& state, const CriticalOptions& options = {});

/// Schwarzschild data with Ψ^{-1} = 1 + m/(2r^{n-2}),
/// m = 2((1-α)/(1+α)) r_α^{n-2}, boundary at r_α.
SchwarzschildData equality_reconstruction(Dimension n, double r_alpha, double alpha);

struct ReconstructionCheck {
  double boundary_value = 0.0;   // Ψ^{-1}(r_α), expected 2/(1+α)
  double far_value = 0.0;        // Ψ^{-1} at 10^6 r_α, expected -> 1
  double laplacian = 0.0;        // sup |Δ_δ Ψ^{-1}| r^2 on [r_α, 100 r_α]
};

ReconstructionCheck check_reconstruction(const SchwarzschildData& data);

/// Reads r_α off the boundary of a flat ḡ_α (its induced radius) and
/// reconstructs the Schwarzschild data g came from.
SchwarzschildData reconstruct_from_state(const ConformalState& state);

}  // namespace capmass
