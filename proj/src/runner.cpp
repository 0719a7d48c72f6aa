#include "capmass/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "capmass/conformal_proof.hpp"
#include "capmass/errors.hpp"
#include "capmass/pmt_fillin.hpp"
#include "capmass/schwarzschild.hpp"
#include "capmass/static_vacuum.hpp"

namespace capmass {
namespace {

double relative(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Collects assertion outcomes of one check. The first failed assertion
// sets the note; later ones are appended.
class Assertions {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    failed_ = true;
    note_ += (note_.empty() ? "" : "; ") + what;
  }
  bool failed() const { return failed_; }
  const std::string& note() const { return note_; }

 private:
  bool failed_ = false;
  std::string note_;
};

struct PointContext {
  const Scenario& scenario;
  Dimension n;
  RadialMetric metric;
  CriticalOptions options;
  CapacitySolution quadrature;
  CriticalityReport spin_report;
  std::optional<SchwarzschildData> schwarzschild;  // closed-form reference when available
};

OrderedJson criticality_values(const CriticalityReport& r) {
  OrderedJson v = OrderedJson::object();
  v["lambda"] = real(r.lambda);
  v["c"] = real(r.c);
  v["alpha"] = real(r.alpha);
  v["beta"] = real(r.beta);
  v["gamma"] = real(r.gamma);
  v["mass"] = real(r.mass);
  v["capacity"] = real(r.capacity);
  v["mean_curvature"] = real(r.mean_curvature);
  v["scalar_curvature"] = real(r.scalar_curvature);
  v["rhs_thm1"] = real(r.rhs_thm1);
  v["rhs_cor1"] = real(r.rhs_cor1);
  v["equality_gap"] = real(r.equality_gap);
  v["min_scalar_curvature"] = real(r.min_scalar_curvature);
  v["offending_radius"] = r.offending_radius ? real(*r.offending_radius) : OrderedJson(nullptr);
  return v;
}

CheckStatus status_of(Verdict v) {
  switch (v) {
    case Verdict::kHoldsStrict:
    case Verdict::kHoldsWithEquality: return CheckStatus::kPass;
    case Verdict::kHypothesisViolated: return CheckStatus::kHypothesisViolated;
    case Verdict::kFails: return CheckStatus::kFail;
  }
  return CheckStatus::kFail;
}

void finish(CheckRecord& rec, const Assertions& a) {
  if (!a.failed()) return;
  rec.status = CheckStatus::kFail;
  rec.note += (rec.note.empty() ? "" : "; ") + a.note();
}

CheckRecord mass_capacity_check(const PointContext& ctx, CheckKind kind) {
  const NumericsSpec& num = ctx.scenario.numerics;
  CriticalityReport r;
  if (kind == CheckKind::kTheorem1) r = ctx.spin_report;
  else if (kind == CheckKind::kTheorem2) r = evaluate_theorem2(ctx.metric, ctx.options);
  else r = evaluate_corollary1(ctx.metric, ctx.scenario.corollary_alpha, ctx.options);

  CheckRecord rec;
  rec.check = kind;
  rec.status = status_of(r.verdict);
  rec.verdict = to_string(r.verdict);
  rec.note = r.hypothesis_note;
  rec.values = criticality_values(r);
  if (r.verdict == Verdict::kFails) rec.note = "mass is below the capacity bound";

  Assertions a;
  if (kind != CheckKind::kCorollary1) {
    const CapacitySolution var = capacity_variational(ctx.metric, num.variational());
    const double cross = relative(var.capacity(), ctx.quadrature.capacity());
    rec.values["capacity_variational"] = real(var.capacity());
    rec.values["capacity_cross_check"] = real(cross);
    a.require(cross <= num.cross_check_tolerance, "quadrature and variational capacities disagree");
    const double flux = capacity_from_flux(ctx.metric, ctx.quadrature);
    rec.values["capacity_flux"] = real(flux);
    a.require(relative(flux, ctx.quadrature.capacity()) <= num.identity_tolerance,
              "flux capacity disagrees with the quadrature capacity");
  } else if (r.verdict != Verdict::kHypothesisViolated) {
    const OverdeterminedSolution od = overdetermined_solution(ctx.metric, ctx.quadrature, r.alpha);
    rec.values["boundary_value"] = real(od.boundary_value);
    rec.values["normal_derivative"] = real(od.normal_derivative);
    rec.values["predicted_normal_derivative"] = real(od.predicted_normal_derivative);
    a.require(relative(od.normal_derivative, od.predicted_normal_derivative) <= num.identity_tolerance,
              "∂V/∂ν does not match ½((n-2)/(n-1))ΓHα");
  }

  if (ctx.schwarzschild && ctx.schwarzschild->mass_ratio() != 1.0) {
    const SchwarzschildReport ref = schwarzschild_report(*ctx.schwarzschild);
    rec.values["closed_form_capacity"] = real(ref.capacity);
    a.require(relative(ref.capacity, r.capacity) <= num.identity_tolerance,
              "capacity differs from m/2 + r0^{n-2}");
    if (r.verdict != Verdict::kHypothesisViolated) {
      rec.values["closed_form_lambda"] = real(ref.lambda);
      rec.values["closed_form_c"] = real(ref.c);
      a.require(relative(ref.lambda, r.lambda) <= num.identity_tolerance, "Λ differs from its closed form");
      a.require(relative(ref.c, r.c) <= num.identity_tolerance, "c differs from its closed form");
      a.require(r.verdict == Verdict::kHoldsWithEquality, "Schwarzschild data must give equality");
    }
  }
  finish(rec, a);
  return rec;
}

CheckRecord conformal_check(const PointContext& ctx) {
  const NumericsSpec& num = ctx.scenario.numerics;
  const CriticalityReport& base = ctx.spin_report;
  CheckRecord rec;
  rec.check = CheckKind::kConformalProof;
  if (base.verdict == Verdict::kHypothesisViolated) {
    rec.status = CheckStatus::kHypothesisViolated;
    rec.verdict = to_string(Verdict::kHypothesisViolated);
    rec.note = base.hypothesis_note;
    return rec;
  }

  const ConformalState state = conformal_transform(ctx.metric, ctx.quadrature, base.alpha);
  const MassShift shift = mass_shift(state, ctx.options.adm);
  const TransformedBoundary tb = transformed_boundary(state);
  const HmCondition hm = hm_condition(ctx.metric, ctx.quadrature, state.alpha);

  OrderedJson& v = rec.values;
  v["alpha"] = real(state.alpha);
  v["alpha_sq_c"] = real(state.branch.alpha_sq_c);
  v["branch"] = to_string(state.branch.branch);
  v["on_branch_boundary"] = state.branch.on_boundary;
  v["conformal_mass"] = real(shift.conformal_mass);
  v["predicted_conformal_mass"] = real(shift.predicted);
  v["mass_shift_error"] = real(shift.relative_error);
  v["mean_curvature_closed"] = real(tb.mean_curvature_closed);
  v["mean_curvature_direct"] = real(tb.mean_curvature_direct);
  v["scalar_curvature_closed"] = real(tb.scalar_curvature_closed);
  v["scalar_curvature_direct"] = real(tb.scalar_curvature_direct);
  v["psi_normal_derivative"] = real(tb.psi_normal_derivative);
  v["psi_normal_derivative_closed"] = real(tb.psi_normal_derivative_closed);
  v["hm_lhs"] = real(hm.lhs);
  v["hm_rhs"] = real(hm.rhs);
  v["hm_holds"] = hm.holds;

  Assertions a;
  a.require(shift.relative_error <= num.mass_shift_tolerance, "m̄ differs from m - (1-α)C");
  a.require(relative(tb.mean_curvature_closed, tb.mean_curvature_direct) <= num.identity_tolerance,
            "H̄ closed form disagrees with the conformal metric");
  a.require(relative(tb.scalar_curvature_closed, tb.scalar_curvature_direct) <= num.identity_tolerance,
            "S̄ closed form disagrees with the conformal metric");
  a.require(relative(tb.psi_normal_derivative, tb.psi_normal_derivative_closed) <= num.identity_tolerance,
            "∂Ψ/∂ν differs from (α(c-1)/4)((n-2)/(n-1))H");

  if (state.branch.admits(AlphaBranch::kAlphaSqCGeqOne)) {
    a.require(state.branch.hm_bound, "c - 1 < (1-α²)/α² on the α²c >= 1 branch");
    a.require(hm.holds, "-(2α/(1+α))∂Φ/∂ν < ((n-2)/(n-1))H on the α²c >= 1 branch");
  }
  if (state.branch.admits(AlphaBranch::kAlphaSqCLeqOne)) {
    const PmtHypotheses pmt = verify_pmt_hypotheses(state, ctx.options);
    v["lemma_lhs"] = real(pmt.lemma_lhs);
    v["lemma_rhs"] = real(pmt.lemma_rhs);
    v["conformal_min_scalar_curvature"] = real(pmt.min_scalar_curvature);
    v["pmt_hypotheses"] = pmt.holds;
    a.require(pmt.holds, "positive mass hypotheses fail for the conformal metric");
  }
  const double tol = ctx.options.equality_tolerance * std::max(1.0, std::abs(shift.base_mass));
  a.require(shift.conformal_mass >= -tol, "conformal mass is negative");

  const bool equality = std::abs(shift.conformal_mass) <= tol;
  rec.verdict = to_string(equality ? Verdict::kHoldsWithEquality : Verdict::kHoldsStrict);
  if (equality) {
    const SchwarzschildData rebuilt = reconstruct_from_state(state);
    const ReconstructionCheck chk = check_reconstruction(rebuilt);
    v["reconstructed_mass"] = real(rebuilt.mass);
    v["reconstructed_r0"] = real(rebuilt.r0);
    v["reconstructed_boundary_value"] = real(chk.boundary_value);
    a.require(relative(chk.boundary_value, 2.0 / (1.0 + state.alpha)) <= num.identity_tolerance,
              "reconstructed Ψ^{-1} misses 2/(1+α) on the boundary");
    if (ctx.schwarzschild) {
      a.require(relative(rebuilt.mass, ctx.schwarzschild->mass) <= num.identity_tolerance &&
                    relative(rebuilt.r0, ctx.schwarzschild->r0) <= num.identity_tolerance,
                "reconstruction does not return the base Schwarzschild data");
    }
  }
  finish(rec, a);
  return rec;
}

CheckRecord static_check(const PointContext& ctx) {
  const NumericsSpec& num = ctx.scenario.numerics;
  CheckRecord rec;
  rec.check = CheckKind::kStaticVacuum;

  const auto violated = [&](const std::string& why) {
    rec.status = CheckStatus::kHypothesisViolated;
    rec.verdict = to_string(Verdict::kHypothesisViolated);
    rec.note = why;
    return rec;
  };

  std::optional<StaticTriple> triple;
  if (ctx.schwarzschild) {
    triple.emplace(schwarzschild_triple(*ctx.schwarzschild));
  } else if (ctx.spin_report.verdict != Verdict::kHypothesisViolated) {
    triple.emplace(potential_triple(ctx.metric, ctx.quadrature, ctx.spin_report.alpha));
  } else {
    return violated(ctx.spin_report.hypothesis_note);
  }

  RigidityReport rig;
  try {
    rig = rigidity_pipeline(*triple, num.rigidity());
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kNotStatic:
      case ErrorCode::kAlphaOutOfRange:
      case ErrorCode::kZeroMeanCurvature:
      case ErrorCode::kInvalidArgument:
        return violated(e.what());
      case ErrorCode::kEqualityGapExceeded:
        rec.status = CheckStatus::kFail;
        rec.verdict = "EqualityGapExceeded";
        rec.note = e.what();
        return rec;
      default:
        throw;
    }
  }

  const NormalDerivative l1 = lemma1_normal_derivative(*triple);
  const GaussStep gauss = gauss_step(triple->metric, triple->metric.r0());
  OrderedJson& v = rec.values;
  v["alpha"] = real(rig.alpha);
  v["c"] = real(rig.c);
  v["hessian_residual"] = real(rig.residuals.hessian_residual);
  v["laplace_residual"] = real(rig.residuals.laplace_residual);
  v["mass_smarr"] = real(rig.mass_smarr);
  v["mass_expansion"] = real(rig.residuals.expansion_mass);
  v["mass_boundary"] = real(rig.mass_boundary);
  v["mass_adm"] = real(rig.mass_adm);
  v["capacity_potential"] = real(rig.capacity_potential);
  v["capacity_quadrature"] = real(rig.capacity_quadrature);
  v["gap"] = real(rig.gap);
  v["lemma1_predicted"] = real(l1.predicted);
  v["lemma1_actual"] = real(l1.actual);
  v["gauss_twice_ric_normal"] = real(gauss.twice_ric_normal);
  v["gauss_side"] = real(gauss.gauss_side);
  v["reconstructed_mass"] = real(rig.reconstructed.mass);
  v["reconstructed_r0"] = real(rig.reconstructed.r0);
  rec.verdict = to_string(Verdict::kHoldsWithEquality);

  Assertions a;
  a.require(relative(l1.predicted, l1.actual) <= num.identity_tolerance, "∂V/∂ν differs from its prediction");
  a.require(relative(rig.mass_smarr, rig.mass_adm) <= num.mass_shift_tolerance &&
                relative(rig.residuals.expansion_mass, rig.mass_adm) <= num.mass_shift_tolerance,
            "Smarr, expansion and ADM masses disagree");
  a.require(relative(rig.mass_boundary, rig.mass_adm) <= num.mass_shift_tolerance,
            "boundary-integral mass differs from the ADM mass");
  a.require(gauss.residual <= num.identity_tolerance * std::max(1.0, std::abs(gauss.gauss_side)),
            "contracted Gauss equation fails at the boundary");
  if (ctx.schwarzschild)
    a.require(relative(rig.reconstructed.mass, ctx.schwarzschild->mass) <= num.identity_tolerance,
              "reconstructed mass differs from the Schwarzschild mass");
  finish(rec, a);
  return rec;
}

CheckRecord appendix_check(const PointContext& ctx) {
  CheckRecord rec;
  rec.check = CheckKind::kAppendixA;
  const BoundaryGeometry b = boundary_geometry(ctx.metric);
  const DiracCheck dirac = dirac_eigenvalue_check(b, ctx.n);
  OrderedJson& v = rec.values;
  v["lambda1"] = real(dirac.lambda1);
  v["friedrich_bound"] = real(dirac.friedrich_bound);
  v["herzlich_ok"] = dirac.herzlich_ok;
  v["hypothesis"] = dirac.hypothesis;

  Assertions a;
  a.require(dirac.hypothesis == dirac.friedrich_ok && dirac.friedrich_ok == dirac.herzlich_ok,
            "Friedrich and Herzlich criteria disagree with S >= ((n-2)/(n-1))H²");

  if (!(b.mean_curvature > 0.0)) {
    rec.status = CheckStatus::kHypothesisViolated;
    rec.verdict = to_string(Verdict::kHypothesisViolated);
    rec.note = "H <= 0";
    finish(rec, a);
    return rec;
  }
  const ConicalFillIn cone = conical_fillin(b, ctx.n);
  const EuclideanGauss eg = euclidean_gauss_identity(b, ctx.n);
  v["cone_r0"] = real(cone.cone_r0);
  v["cone_scalar_curvature_at_r0"] = real(cone.scalar_curvature(cone.cone_r0));
  v["cone_scalar_curvature_sign"] = cone.scalar_curvature_sign();
  v["euclidean_mean_curvature"] = real(eg.h0);
  v["gauss_residual"] = real(eg.residual);

  a.require(relative(cone.slice_radius, b.induced_radius) <= 1e-12 &&
                relative(cone.slice_mean_curvature, b.mean_curvature) <= 1e-12,
            "cone slice does not reproduce the boundary");
  a.require(relative(cone.scalar_curvature(cone.cone_r0), cone.scalar_curvature_closed(cone.cone_r0)) <= 1e-12 ||
                std::abs(cone.scalar_curvature(cone.cone_r0)) <= 1e-12 * b.scalar_curvature,
            "warped-product curvature differs from the closed form");
  a.require(eg.residual <= 1e-12 * std::max(1.0, b.scalar_curvature), "Euclidean Gauss identity fails");
  a.require((cone.scalar_curvature_sign() >= 0) == dirac.hypothesis || cone.scalar_curvature_sign() == 0,
            "sign of the fill-in curvature does not follow the hypothesis");
  a.require(eg.dominates == dirac.hypothesis, "H0 >= H does not follow the hypothesis");

  rec.status = dirac.hypothesis ? CheckStatus::kPass : CheckStatus::kHypothesisViolated;
  if (!dirac.hypothesis) rec.verdict = to_string(Verdict::kHypothesisViolated);
  else rec.verdict = to_string(cone.scalar_curvature_sign() == 0 ? Verdict::kHoldsWithEquality : Verdict::kHoldsStrict);
  if (!dirac.hypothesis) rec.note = "S < ((n-2)/(n-1))H², fill-in has negative scalar curvature";
  finish(rec, a);
  return rec;
}

PointSummary summarize(const PointContext& ctx, const std::vector<CheckRecord>& checks) {
  CriticalityReport r = ctx.spin_report;
  for (const auto& c : checks) {
    if (c.check == CheckKind::kTheorem2) {
      r = evaluate_theorem2(ctx.metric, ctx.options);
      break;
    }
    if (c.check == CheckKind::kTheorem1) break;
    if (c.check == CheckKind::kCorollary1) {
      r = evaluate_corollary1(ctx.metric, ctx.scenario.corollary_alpha, ctx.options);
      break;
    }
  }
  return {r.capacity, r.mass, r.lambda, r.c, r.alpha, r.rhs_thm1, r.equality_gap, to_string(r.verdict)};
}

OrderedJson provenance(const Scenario& s) {
  OrderedJson p = OrderedJson::object();
  p["tool"] = "capmass";
  p["version"] = kToolVersion;
  p["source"] = s.source;
  OrderedJson checks = OrderedJson::array();
  for (CheckKind k : s.checks) checks.push_back(to_string(k));
  p["checks"] = checks;
  OrderedJson m = OrderedJson::object();
  m["kind"] = to_string(s.metric.kind);
  if (s.metric.kind != ProfileKind::kTabulated) m["mass"] = real(s.metric.mass);
  OrderedJson terms = OrderedJson::array();
  for (const auto& t : s.metric.terms) {
    OrderedJson tj = OrderedJson::object();
    tj["kind"] = to_string(t.kind);
    tj["coef"] = real(t.coef);
    if (t.kind == BumpTerm::Kind::kPower) tj["exponent"] = real(t.exponent);
    if (t.kind == BumpTerm::Kind::kExponential || t.kind == BumpTerm::Kind::kScreened) tj["rate"] = real(t.rate);
    if (t.kind == BumpTerm::Kind::kGaussian) {
      tj["center"] = real(t.center);
      tj["width"] = real(t.width);
    }
    terms.push_back(std::move(tj));
  }
  if (!terms.empty()) m["terms"] = std::move(terms);
  if (s.metric.kind == ProfileKind::kTabulated) m["table_points"] = s.metric.radii.size();
  p["metric"] = std::move(m);
  p["spin"] = s.spin;
  if (s.corollary_alpha) p["corollary_alpha"] = real(*s.corollary_alpha);
  const NumericsSpec& n = s.numerics;
  p["numerics"] = OrderedJson{{"grid_points", n.grid_points},
                              {"r_max_factor", real(n.r_max_factor)},
                              {"cut_factor", real(n.cut_factor)},
                              {"panel_width", real(n.panel_width)},
                              {"adm_radius_factor", real(n.adm_radius_factor)},
                              {"adm_tolerance", real(n.adm_tolerance)},
                              {"equality_tolerance", real(n.equality_tolerance)},
                              {"curvature_tolerance", real(n.curvature_tolerance)},
                              {"curvature_samples", n.curvature_samples},
                              {"cross_check_tolerance", real(n.cross_check_tolerance)},
                              {"identity_tolerance", real(n.identity_tolerance)},
                              {"mass_shift_tolerance", real(n.mass_shift_tolerance)}};
  if (s.sweep) {
    OrderedJson values = OrderedJson::array();
    for (double x : s.sweep->values) values.push_back(real(x));
    p["sweep"] = OrderedJson{{"parameter", s.sweep->parameter}, {"values", values}};
  }
  return p;
}

}  // namespace

PointRecord run_point(const Scenario& s, std::size_t index) {
  const Dimension n(s.dimension);
  RadialMetric metric(n, s.boundary_r0, s.metric.profile(n), s.spin);
  const CriticalOptions options = s.numerics.critical();
  CapacitySolution quadrature = capacity_quadrature(metric, options.quadrature);
  CriticalityReport spin_report = evaluate_theorem1(metric, options);
  std::optional<SchwarzschildData> reference;
  if (s.metric.kind == ProfileKind::kSchwarzschild) reference = SchwarzschildData(n, s.metric.mass, s.boundary_r0);

  const PointContext ctx{s, n, std::move(metric), options, std::move(quadrature), std::move(spin_report), reference};

  PointRecord rec;
  rec.index = index;
  rec.dimension = s.dimension;
  if (s.metric.kind != ProfileKind::kTabulated) rec.mass = s.metric.mass;
  rec.boundary_r0 = s.boundary_r0;
  for (CheckKind k : s.checks) {
    switch (k) {
      case CheckKind::kTheorem1:
      case CheckKind::kTheorem2:
      case CheckKind::kCorollary1: rec.checks.push_back(mass_capacity_check(ctx, k)); break;
      case CheckKind::kConformalProof: rec.checks.push_back(conformal_check(ctx)); break;
      case CheckKind::kStaticVacuum: rec.checks.push_back(static_check(ctx)); break;
      case CheckKind::kAppendixA: rec.checks.push_back(appendix_check(ctx)); break;
    }
  }
  rec.summary = summarize(ctx, rec.checks);
  return rec;
}

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Scenario> points = scenario.expand();
  std::vector<PointRecord> records(points.size());
  std::vector<std::exception_ptr> errors(points.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        records[i] = run_point(points[i], i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::clamp(options.jobs, 1, int(std::max<std::size_t>(1, points.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // Merge in sweep order; the first failing point decides the error.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Report report;
  report.scenario = scenario.name;
  report.provenance = provenance(scenario);
  report.points = std::move(records);
  if (options.timing)
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Report run_scenario_file(const std::string& path, const RunOptions& options) {
  return run_scenario(load_scenario(path), options);
}

}  // namespace capmass
