#include "capmass/conformal_proof.hpp"

#include <algorithm>
#include <cmath>

#include "capmass/errors.hpp"

namespace capmass {
namespace {

constexpr double kSlack = 1e-10;

bool geq_relaxed(double a, double b) {
  return a >= b - kSlack * std::max({std::abs(a), std::abs(b), 1e-300});
}

bool near(double a, double b) {
  return std::abs(a - b) <= kSlack * std::max({std::abs(a), std::abs(b), 1e-300});
}

void require_open_unit(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::kAlphaOutOfRange, "α must lie in (0, 1), got " + std::to_string(alpha));
}

}  // namespace

HmCondition hm_condition(const RadialMetric& metric, const CapacitySolution& solution, double alpha) {
  const Dimension n = metric.dimension();
  HmCondition out;
  out.lhs = -(2.0 * alpha / (1.0 + alpha)) * solution.normal_derivative();
  out.rhs = n.gauss_ratio() * sphere_mean_curvature(metric, metric.r0());
  out.holds = geq_relaxed(out.lhs, out.rhs);
  out.equality = near(out.lhs, out.rhs);
  return out;
}

std::string to_string(AlphaBranch branch) {
  return branch == AlphaBranch::kAlphaSqCGeqOne ? "AlphaSqCGeqOne" : "AlphaSqCLeqOne";
}

BranchSelection classify_branch(double alpha, double c) {
  BranchSelection sel;
  sel.alpha = alpha;
  sel.beta = alpha / (1.0 - alpha);
  sel.alpha_sq_c = alpha * alpha * c;
  sel.on_boundary = std::abs(sel.alpha_sq_c - 1.0) <= kSlack;
  sel.branch = sel.alpha_sq_c >= 1.0 ? AlphaBranch::kAlphaSqCGeqOne : AlphaBranch::kAlphaSqCLeqOne;
  sel.hm_bound = geq_relaxed(c - 1.0, (1.0 - alpha * alpha) / (alpha * alpha));
  return sel;
}

BranchSelection alpha_branch(double lambda, double c) {
  if (!(lambda > 0.0) || !(c > 1.0))
    throw Error(ErrorCode::kInvalidArgument, "α-branch needs Λ > 0 and c > 1");
  const double beta = lambda / (c - 1.0);
  BranchSelection sel = classify_branch(beta / (1.0 + beta), c);
  sel.beta = beta;
  return sel;
}

ConformalState conformal_transform(const RadialMetric& base, const CapacitySolution& phi, double alpha) {
  require_open_unit(alpha);
  const double shrink = 0.5 * (1.0 - alpha);
  UnitField psi([phi, shrink](double r) { return -shrink * phi.potential_jet(r); });
  RadialMetric conformal(base.dimension(), base.r0(), ConformalProfile::product(base.profile(), psi),
                         base.spin());

  const BoundaryGeometry boundary = boundary_geometry(base);
  const ScalarMeanHypothesis hyp = check_scalar_mean_hypothesis(boundary, base.dimension());
  double lambda = 0.0;
  if (boundary.mean_curvature > 0.0) lambda = fit_lambda(base, phi).lambda;
  const bool critical = lambda > 0.0 && hyp.satisfied;

  return ConformalState{base,   phi,   alpha, std::move(psi), std::move(conformal), lambda,
                        hyp.c,  classify_branch(alpha, hyp.c), critical};
}

MassShift mass_shift(const ConformalState& state, const AdmOptions& options) {
  MassShift out;
  out.base_mass = adm_mass(state.base, options);
  out.conformal_mass = adm_mass(state.conformal_metric, options);
  out.predicted = out.base_mass - (1.0 - state.alpha) * state.phi.capacity();
  const double scale = std::max(std::abs(out.base_mass), state.phi.capacity());
  out.relative_error = std::abs(out.conformal_mass - out.predicted) / scale;
  return out;
}

TransformedBoundary transformed_boundary(const ConformalState& state) {
  const Dimension n = state.base.dimension();
  const double nd = n.real();
  const double a = state.alpha;
  const double c = state.c;
  const BoundaryGeometry base = boundary_geometry(state.base);
  const BoundaryGeometry bar = boundary_geometry(state.conformal_metric);
  const double two = std::pow(2.0, 2.0 / (nd - 2.0));

  TransformedBoundary out;
  out.mean_curvature_closed = two * (1.0 + c * a) * std::pow(1.0 + a, -nd / (nd - 2.0)) * base.mean_curvature;
  // Σ is rescaled by Ψ^{4/(n-2)} with Ψ = (1+α)/2 constant on it.
  out.scalar_curvature_closed = two * two * std::pow(1.0 + a, -4.0 / (nd - 2.0)) * base.scalar_curvature;
  out.mean_curvature_direct = bar.mean_curvature;
  out.scalar_curvature_direct = bar.scalar_curvature;
  out.psi_normal_derivative = state.base.normal_derivative(state.base.r0(), state.psi.deviation(state.base.r0()).d1);
  out.psi_normal_derivative_closed = 0.25 * a * (c - 1.0) * n.gauss_ratio() * base.mean_curvature;
  return out;
}

bool conformal_boundary_lemma(double c, double alpha) {
  return geq_relaxed(c * (1.0 + alpha) * (1.0 + alpha), (1.0 + c * alpha) * (1.0 + c * alpha));
}

PmtHypotheses verify_pmt_hypotheses(const ConformalState& state, const CriticalOptions& options) {
  const Dimension n = state.base.dimension();
  const double a = state.alpha;
  const double c = state.c;
  PmtHypotheses out;
  out.lemma_lhs = c * (1.0 + a) * (1.0 + a);
  out.lemma_rhs = (1.0 + c * a) * (1.0 + c * a);
  out.lemma = conformal_boundary_lemma(c, a);

  const BoundaryGeometry bar = boundary_geometry(state.conformal_metric);
  out.boundary = geq_relaxed(bar.scalar_curvature, n.gauss_ratio() * bar.mean_curvature * bar.mean_curvature);

  const CurvatureScan scan = scan_scalar_curvature(state.conformal_metric, options);
  out.min_scalar_curvature = scan.minimum;
  out.scalar_curvature = !scan.offending_radius.has_value();
  out.holds = state.branch.admits(AlphaBranch::kAlphaSqCLeqOne) && out.lemma && out.boundary &&
              out.scalar_curvature;
  return out;
}

SchwarzschildData equality_reconstruction(Dimension n, double r_alpha, double alpha) {
  require_open_unit(alpha);
  if (!(r_alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r_α must be positive");
  const double mass = 2.0 * ((1.0 - alpha) / (1.0 + alpha)) * std::pow(r_alpha, n.real() - 2.0);
  return SchwarzschildData(n, mass, r_alpha);
}

ReconstructionCheck check_reconstruction(const SchwarzschildData& data) {
  const ConformalProfile profile = ConformalProfile::schwarzschild(data.n, data.mass);
  const double nd = data.n.real();
  ReconstructionCheck out;
  out.boundary_value = profile(data.r0);
  out.far_value = profile(1e6 * data.r0);
  const int samples = 200;
  for (int i = 0; i < samples; ++i) {
    const double r = data.r0 * std::pow(100.0, double(i) / double(samples - 1));
    const RadialJet j = profile.deviation(r);
    out.laplacian = std::max(out.laplacian, r * r * std::abs(j.d2 + (nd - 1.0) * j.d1 / r));
  }
  return out;
}

SchwarzschildData reconstruct_from_state(const ConformalState& state) {
  const BoundaryGeometry bar = boundary_geometry(state.conformal_metric);
  return equality_reconstruction(state.base.dimension(), bar.induced_radius, state.alpha);
}

}  // namespace capmass
