#pragma once

// The critical area-normalized capacitor condition
//     ∂Φ/∂ν = -½ ((n-2)/(n-1)) Λ H   on Σ,
// the scalar/mean curvature hypothesis S >= ((n-2)/(n-1)) c H^2 with c > 1,
// and the resulting lower bound m >= C / (1 + Λ/(c-1)).

#include <optional>
#include <string>

#include "capmass/capacity.hpp"
#include "capmass/geom_core.hpp"

namespace capmass {

struct LambdaFit {
  double lambda = 0.0;
  double residual = 0.0;  // |∂Φ/∂ν + ½((n-2)/(n-1)) Λ H|
};

/// Throws ZeroMeanCurvature when H = 0.
LambdaFit fit_lambda(const RadialMetric& metric, const CapacitySolution& solution);

struct ScalarMeanHypothesis {
  double c = 0.0;
  bool satisfied = false;  // c > 1
};

/// c = ((n-1)/(n-2)) S / H^2. Values within 1e-12 of 1 count as c = 1.
ScalarMeanHypothesis check_scalar_mean_hypothesis(const BoundaryGeometry& boundary, Dimension n);

enum class Verdict { kHoldsStrict, kHoldsWithEquality, kHypothesisViolated, kFails };

std::string to_string(Verdict verdict);
Verdict verdict_from_string(const std::string& name);

/// Which mass-capacity statement is being evaluated. The spin variant needs
/// the metric's spin flag; the embedded variant needs n = 3 or an isometric
/// Euclidean embedding of Σ, which round spheres always have.
enum class MassCapacityStatement { kSpin, kEmbedded, kOverdetermined };

struct CriticalityReport {
  double lambda = 0.0;
  double residual = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mass = 0.0;
  double capacity = 0.0;
  double mean_curvature = 0.0;
  double scalar_curvature = 0.0;
  double rhs_thm1 = 0.0;
  double rhs_cor1 = 0.0;
  Verdict verdict = Verdict::kHypothesisViolated;
  double equality_gap = 0.0;  // m - rhs
  std::string hypothesis_note;  // why the hypotheses fail, empty otherwise
  std::optional<double> offending_radius;  // first sample with R < -tolerance
  double min_scalar_curvature = 0.0;
};

struct CriticalOptions {
  double equality_tolerance = 1e-8;   // relative to max(1, |m|)
  double curvature_tolerance = 1e-10; // R >= -tolerance counts as R >= 0
  double curvature_sample_factor = 1e3;  // R sampled on [r0, factor * r0]
  int curvature_samples = 2000;
  QuadratureOptions quadrature{};
  AdmOptions adm{};
};

/// Samples R on a log grid; returns the minimum and the first radius where
/// R < -tolerance, if any.
struct CurvatureScan {
  double minimum = 0.0;
  std::optional<double> offending_radius;
};
CurvatureScan scan_scalar_curvature(const RadialMetric& metric, const CriticalOptions& options = {});

CriticalityReport evaluate_mass_capacity(const RadialMetric& metric, MassCapacityStatement statement,
                                         const CriticalOptions& options = {},
                                         std::optional<double> alpha = std::nullopt);

inline CriticalityReport evaluate_theorem1(const RadialMetric& metric, const CriticalOptions& options = {}) {
  return evaluate_mass_capacity(metric, MassCapacityStatement::kSpin, options);
}
inline CriticalityReport evaluate_theorem2(const RadialMetric& metric, const CriticalOptions& options = {}) {
  return evaluate_mass_capacity(metric, MassCapacityStatement::kEmbedded, options);
}
/// Overdetermined form with a chosen α ∈ (0,1); by default α = β/(1+β).
inline CriticalityReport evaluate_corollary1(const RadialMetric& metric, std::optional<double> alpha = std::nullopt,
                                             const CriticalOptions& options = {}) {
  return evaluate_mass_capacity(metric, MassCapacityStatement::kOverdetermined, options, alpha);
}

/// V = 1 + (α-1)Φ solving ΔV = 0, V|Σ = α, V -> 1,
/// ∂V/∂ν = ½((n-2)/(n-1)) Γ H V|Σ with Γ = Λ(1/α - 1).
struct OverdeterminedSolution {
  UnitField potential;
  double alpha = 0.0;
  double gamma = 0.0;
  double boundary_value = 0.0;
  double normal_derivative = 0.0;       // from the potential
  double predicted_normal_derivative = 0.0;  // ½((n-2)/(n-1)) Γ H α
};

/// Throws AlphaOutOfRange unless 0 < α < 1.
OverdeterminedSolution overdetermined_solution(const RadialMetric& metric,
                                               const CapacitySolution& solution, double alpha);

}  // namespace capmass
