#include "capmass/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capmass/errors.hpp"

namespace capmass {

LambdaFit fit_lambda(const RadialMetric& metric, const CapacitySolution& solution) {
  const Dimension n = metric.dimension();
  const double h = sphere_mean_curvature(metric, metric.r0());
  if (h == 0.0) throw Error(ErrorCode::kZeroMeanCurvature, "Λ is undefined when H = 0");
  const double k = n.gauss_ratio();
  LambdaFit fit;
  fit.lambda = -2.0 * solution.normal_derivative() / (k * h);
  // A single orbit carries the whole boundary, so the residual only
  // measures round-off of the fit.
  fit.residual = std::abs(solution.normal_derivative() + 0.5 * k * fit.lambda * h);
  return fit;
}

ScalarMeanHypothesis check_scalar_mean_hypothesis(const BoundaryGeometry& boundary, Dimension n) {
  const double h = boundary.mean_curvature;
  ScalarMeanHypothesis out;
  if (h == 0.0) return out;
  out.c = boundary.scalar_curvature / (n.gauss_ratio() * h * h);
  out.satisfied = out.c - 1.0 > 1e-12;
  return out;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kHoldsStrict: return "HoldsStrict";
    case Verdict::kHoldsWithEquality: return "HoldsWithEquality";
    case Verdict::kHypothesisViolated: return "HypothesisViolated";
    case Verdict::kFails: return "Fails";
  }
  return "Unknown";
}

Verdict verdict_from_string(const std::string& name) {
  for (Verdict v : {Verdict::kHoldsStrict, Verdict::kHoldsWithEquality, Verdict::kHypothesisViolated,
                    Verdict::kFails})
    if (to_string(v) == name) return v;
  throw Error(ErrorCode::kInvalidArgument, "unknown verdict '" + name + "'");
}

CurvatureScan scan_scalar_curvature(const RadialMetric& metric, const CriticalOptions& options) {
  CurvatureScan scan;
  scan.minimum = std::numeric_limits<double>::infinity();
  const int samples = std::max(2, options.curvature_samples);
  const double t0 = std::log(metric.r0());
  const double span = std::log(options.curvature_sample_factor);
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp(t0 + span * double(i) / double(samples - 1));
    const double value = scalar_curvature(metric, r);
    scan.minimum = std::min(scan.minimum, value);
    if (!scan.offending_radius && value < -options.curvature_tolerance) scan.offending_radius = r;
  }
  return scan;
}

CriticalityReport evaluate_mass_capacity(const RadialMetric& metric, MassCapacityStatement statement,
                                         const CriticalOptions& options, std::optional<double> alpha) {
  const Dimension n = metric.dimension();
  CriticalityReport rep;

  const BoundaryGeometry boundary = boundary_geometry(metric);
  const CapacitySolution solution = capacity_quadrature(metric, options.quadrature);
  rep.mass = adm_mass(metric, options.adm);
  rep.capacity = solution.capacity();
  rep.mean_curvature = boundary.mean_curvature;
  rep.scalar_curvature = boundary.scalar_curvature;

  std::vector<std::string> notes;
  if (boundary.mean_curvature > 0.0) {
    const LambdaFit fit = fit_lambda(metric, solution);
    rep.lambda = fit.lambda;
    rep.residual = fit.residual;
  } else {
    notes.push_back("H <= 0");
  }
  const ScalarMeanHypothesis hyp = check_scalar_mean_hypothesis(boundary, n);
  rep.c = hyp.c;
  if (!hyp.satisfied) notes.push_back("c <= 1");

  const CurvatureScan scan = scan_scalar_curvature(metric, options);
  rep.min_scalar_curvature = scan.minimum;
  rep.offending_radius = scan.offending_radius;
  if (scan.offending_radius) notes.push_back("R < 0 at r = " + std::to_string(*scan.offending_radius));

  if (statement == MassCapacityStatement::kSpin && !metric.spin()) notes.push_back("not spin");
  // kEmbedded: round boundary spheres embed isometrically in R^n for every n.

  if (alpha && !(*alpha > 0.0 && *alpha < 1.0))
    throw Error(ErrorCode::kAlphaOutOfRange, "α must lie in (0, 1), got " + std::to_string(*alpha));

  if (boundary.mean_curvature > 0.0 && hyp.satisfied) {
    rep.beta = rep.lambda / (rep.c - 1.0);
    rep.alpha = alpha.value_or(rep.beta / (1.0 + rep.beta));
    rep.gamma = rep.lambda * (1.0 / rep.alpha - 1.0);
    rep.rhs_thm1 = rep.capacity / (1.0 + rep.lambda / (rep.c - 1.0));
    rep.rhs_cor1 =
        rep.capacity / (1.0 + rep.alpha * rep.gamma / ((1.0 - rep.alpha) * (rep.c - 1.0)));
  }

  if (!notes.empty()) {
    rep.verdict = Verdict::kHypothesisViolated;
    for (std::size_t i = 0; i < notes.size(); ++i) rep.hypothesis_note += (i ? "; " : "") + notes[i];
    return rep;
  }

  const double rhs = statement == MassCapacityStatement::kOverdetermined ? rep.rhs_cor1 : rep.rhs_thm1;
  rep.equality_gap = rep.mass - rhs;
  const double tol = options.equality_tolerance * std::max(1.0, std::abs(rep.mass));
  if (std::abs(rep.equality_gap) <= tol)
    rep.verdict = Verdict::kHoldsWithEquality;
  else if (rep.equality_gap > 0.0)
    rep.verdict = Verdict::kHoldsStrict;
  else
    rep.verdict = Verdict::kFails;
  return rep;
}

OverdeterminedSolution overdetermined_solution(const RadialMetric& metric,
                                               const CapacitySolution& solution, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::kAlphaOutOfRange, "α must lie in (0, 1), got " + std::to_string(alpha));
  const Dimension n = metric.dimension();
  const double r0 = metric.r0();
  const LambdaFit fit = fit_lambda(metric, solution);
  const double h = sphere_mean_curvature(metric, r0);

  OverdeterminedSolution out;
  out.alpha = alpha;
  out.gamma = fit.lambda * (1.0 / alpha - 1.0);
  // V - 1 = (α - 1) Φ.
  out.potential = UnitField([solution, alpha](double r) { return (alpha - 1.0) * solution.potential_jet(r); });
  out.boundary_value = out.potential(r0);
  out.normal_derivative = metric.normal_derivative(r0, out.potential.deviation(r0).d1);
  out.predicted_normal_derivative = 0.5 * n.gauss_ratio() * out.gamma * h * out.boundary_value;
  return out;
}

}  // namespace capmass
