#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "capmass/conformal_proof.hpp"
#include "error_code.hpp"
#include "support.hpp"

using namespace capmass;
using oracle::rel;

namespace {

RadialMetric schwarzschild(int k, double m, double r0) {
  return RadialMetric(Dimension(k), r0, ConformalProfile::schwarzschild(Dimension(k), m));
}

RadialMetric screened(int k, double m, double r0, double a, double rate) {
  const Dimension n(k);
  return RadialMetric(n, r0, ConformalProfile::perturbed(n, m, {BumpTerm::screened(a, rate)}));
}

ConformalState critical_state(const RadialMetric& g) {
  const CapacitySolution phi = capacity_quadrature(g);
  const CriticalityReport r = evaluate_theorem1(g);
  return conformal_transform(g, phi, r.alpha);
}

}  // namespace

TEST_CASE("boundary condition for the cited mass bound") {
  const RadialMetric g = schwarzschild(3, 2.0, 2.0);
  const CapacitySolution phi = capacity_quadrature(g);
  const HmCondition eq = hm_condition(g, phi, 1.0 / 3.0);
  CHECK(eq.lhs == doctest::Approx(0.07407407407407407).epsilon(1e-13));
  CHECK(eq.rhs == doctest::Approx(0.07407407407407407).epsilon(1e-13));
  CHECK(eq.holds);
  CHECK(eq.equality);
  CHECK_FALSE(hm_condition(g, phi, 0.1).holds);

  for (int k : {3, 5}) {
    const RadialMetric flat = schwarzschild(k, 0.0, 1.0);
    const HmCondition f = hm_condition(flat, capacity_quadrature(flat), 1.0);
    CHECK(f.lhs == doctest::Approx(k - 2.0));
    CHECK(f.rhs == doctest::Approx(k - 2.0));
    CHECK(f.equality);
  }
}

TEST_CASE("α²c branch selection") {
  const BranchSelection s = alpha_branch(4.0, 9.0);
  CHECK(s.beta == doctest::Approx(0.5));
  CHECK(s.alpha == doctest::Approx(1.0 / 3.0));
  CHECK(s.alpha_sq_c == doctest::Approx(1.0));
  CHECK(s.on_boundary);
  CHECK(s.admits(AlphaBranch::kAlphaSqCGeqOne));
  CHECK(s.admits(AlphaBranch::kAlphaSqCLeqOne));

  const BranchSelection leq = alpha_branch(2.0, 2.0);
  CHECK(leq.alpha == doctest::Approx(2.0 / 3.0));
  CHECK(leq.alpha_sq_c == doctest::Approx(8.0 / 9.0));
  CHECK(leq.branch == AlphaBranch::kAlphaSqCLeqOne);
  CHECK_FALSE(leq.admits(AlphaBranch::kAlphaSqCGeqOne));

  const BranchSelection geq = alpha_branch(6.0, 2.0);
  CHECK(geq.alpha == doctest::Approx(6.0 / 7.0));
  CHECK(geq.alpha_sq_c == doctest::Approx(72.0 / 49.0));
  CHECK(geq.branch == AlphaBranch::kAlphaSqCGeqOne);
  CHECK(geq.hm_bound);

  CHECK(error_code_of([] { alpha_branch(-1.0, 2.0); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([] { alpha_branch(2.0, 1.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("the hm bound is equivalent to α²c >= 1 for α = β/(1+β)") {
  oracle::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double lambda = rng.uniform(0.05, 20.0), c = 1.0 + rng.uniform(1e-3, 30.0);
    const BranchSelection s = alpha_branch(lambda, c);
    if (std::abs(s.alpha_sq_c - 1.0) < 1e-9) continue;
    CHECK(s.hm_bound == (s.alpha_sq_c >= 1.0));
  }
}

TEST_CASE("algebraic boundary lemma") {
  CHECK(conformal_boundary_lemma(9.0, 1.0 / 3.0));
  CHECK(conformal_boundary_lemma(2.0, 2.0 / 3.0));
  CHECK(conformal_boundary_lemma(1.01, 0.9));
  CHECK_FALSE(conformal_boundary_lemma(2.0, 6.0 / 7.0));
  // c(1+α)² - (1+cα)² = (c-1)(1-α²c): the lemma holds exactly when α²c <= 1.
  oracle::Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const double c = 1.0 + rng.uniform(1e-3, 50.0), alpha = rng.uniform(1e-3, 1.0 - 1e-3);
    const double product = alpha * alpha * c;
    if (std::abs(product - 1.0) < 1e-9) continue;
    CHECK(conformal_boundary_lemma(c, alpha) == (product <= 1.0));
  }
}

TEST_CASE("conformal mass on Schwarzschild data vanishes") {
  const ConformalState st = critical_state(schwarzschild(3, 2.0, 2.0));
  CHECK(st.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(st.critical);
  CHECK(st.branch.on_boundary);
  const MassShift ms = mass_shift(st);
  CHECK(ms.predicted == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(ms.conformal_mass) < 1e-10);
  CHECK(ms.relative_error < 1e-6);
  // Ψ^{4/(n-2)} g is flat: Ψ u = 1.
  for (double r : {2.0, 5.0, 100.0}) CHECK(std::abs(st.conformal_metric.profile()(r) - 1.0) < 1e-12);
  const TransformedBoundary tb = transformed_boundary(st);
  CHECK(tb.mean_curvature_closed == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(tb.mean_curvature_direct == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("α -> 1 leaves the metric unchanged") {
  const RadialMetric g = screened(3, 2.0, 2.0, -0.5, 1.0);
  const CapacitySolution phi = capacity_quadrature(g);
  const ConformalState st = conformal_transform(g, phi, 1.0 - 1e-12);
  const MassShift ms = mass_shift(st);
  CHECK(ms.conformal_mass == doctest::Approx(ms.base_mass).epsilon(1e-9));
  CHECK(error_code_of([&] { conformal_transform(g, phi, 1.0); }) == ErrorCode::kAlphaOutOfRange);
  CHECK(error_code_of([&] { conformal_transform(g, phi, 0.0); }) == ErrorCode::kAlphaOutOfRange);
}

TEST_CASE("perturbed fixtures: mass shift, boundary curvatures and positive mass hypotheses") {
  struct Case {
    int n;
    double m, r0, a, k;
  };
  const Case cases[] = {{3, 2.0, 2.0, -0.5, 1.0}, {3, 1.0, 1.5, -0.2, 0.5}, {4, 2.0, 2.0, -0.4, 1.0},
                        {5, 2.0, 1.5, -0.3, 2.0}, {3, 2.0, 3.0, -1.0, 0.5}, {7, 1.0, 1.2, -0.2, 1.0}};
  for (const Case& c : cases) {
    const ConformalState st = critical_state(screened(c.n, c.m, c.r0, c.a, c.k));
    CHECK(st.branch.branch == AlphaBranch::kAlphaSqCLeqOne);
    const MassShift ms = mass_shift(st);
    CHECK(ms.relative_error < 1e-6);
    CHECK(ms.conformal_mass > 0.0);
    const TransformedBoundary tb = transformed_boundary(st);
    CHECK(rel(tb.mean_curvature_closed, tb.mean_curvature_direct) < 1e-8);
    CHECK(rel(tb.scalar_curvature_closed, tb.scalar_curvature_direct) < 1e-8);
    CHECK(rel(tb.psi_normal_derivative, tb.psi_normal_derivative_closed) < 1e-8);
    const PmtHypotheses p = verify_pmt_hypotheses(st);
    CHECK(p.lemma);
    CHECK(p.boundary);
    CHECK(p.scalar_curvature);
    CHECK(p.holds);
  }
}

TEST_CASE("transformed boundary scalar curvature scales with exponent 4/(n-2)") {
  // S̄ = ρ̄^{-2}(n-1)(n-2) with ρ̄ = Ψ(r0)^{2/(n-2)} ρ and Ψ(r0) = (1+α)/2.
  // The variant with exponent 2/(n-2) disagrees with the geometry.
  for (int k : {3, 4, 5}) {
    const ConformalState st = critical_state(screened(k, 2.0, 2.0, -0.4, 1.0));
    const TransformedBoundary tb = transformed_boundary(st);
    const double s = boundary_geometry(st.base).scalar_curvature;
    const double e = 2.0 / (k - 2), a = st.alpha;
    const double four = std::pow(2.0, 2 * e) * std::pow(1.0 + a, -2 * e) * s;
    const double two = std::pow(2.0, e) * std::pow(1.0 + a, -e) * s;
    CHECK(rel(four, tb.scalar_curvature_direct) < 1e-12);
    CHECK(rel(two, tb.scalar_curvature_direct) > 1e-2);
  }
}

TEST_CASE("n=4 Schwarzschild closed forms agree with the direct geometry") {
  const ConformalState st = critical_state(schwarzschild(4, 2.0, 2.0));
  const TransformedBoundary tb = transformed_boundary(st);
  CHECK(rel(tb.mean_curvature_closed, tb.mean_curvature_direct) < 1e-8);
  CHECK(rel(tb.scalar_curvature_closed, tb.scalar_curvature_direct) < 1e-8);
  CHECK(std::abs(st.branch.alpha_sq_c - 1.0) < 1e-12);
}

TEST_CASE("equality reconstruction") {
  const SchwarzschildData d = equality_reconstruction(Dimension(3), 2.0, 1.0 / 3.0);
  CHECK(d.mass == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.r0 == 2.0);
  const SchwarzschildData d4 = equality_reconstruction(Dimension(4), 1.0, 0.5);
  CHECK(d4.mass == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const SchwarzschildData near_flat = equality_reconstruction(Dimension(5), 1.3, 1.0 - 1e-9);
  CHECK(std::abs(near_flat.mass) < 1e-8);
  CHECK(error_code_of([] { equality_reconstruction(Dimension(3), 1.0, 1.0); }) == ErrorCode::kAlphaOutOfRange);

  const ReconstructionCheck chk = check_reconstruction(d);
  CHECK(chk.boundary_value == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(chk.far_value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(chk.laplacian < 1e-8);

  // Round trip from a Schwarzschild exterior through the flat ḡ_α.
  for (int k : {3, 4, 7}) {
    const ConformalState st = critical_state(schwarzschild(k, 1.0, 1.5));
    const SchwarzschildData back = reconstruct_from_state(st);
    CHECK(rel(back.mass, 1.0) < 1e-10);
    CHECK(rel(back.r0, 1.5) < 1e-12);
  }
}
