#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "capmass/static_vacuum.hpp"
#include "error_code.hpp"
#include "support.hpp"

using namespace capmass;
using oracle::rel;

TEST_CASE("Schwarzschild triple is static") {
  const StaticTriple t = schwarzschild_triple({Dimension(3), 2.0, 2.0});
  CHECK(t.alpha_boundary == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const StaticResiduals r = static_residuals(t);
  CHECK(r.hessian_residual <= 1e-8);
  CHECK(r.laplace_residual <= 1e-8);
  CHECK(r.smarr_mass == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.expansion_stable);
  CHECK(r.expansion_mass == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("flat triple") {
  const Dimension n(4);
  const StaticTriple t(RadialMetric(n, 1.0, ConformalProfile::euclidean(n)), UnitField::one());
  const StaticResiduals r = static_residuals(t);
  CHECK(r.hessian_residual == 0.0);
  CHECK(r.laplace_residual == 0.0);
  CHECK(r.smarr_mass == 0.0);
  CHECK(r.expansion_mass == 0.0);
  CHECK(error_code_of([&] { rigidity_pipeline(t); }) == ErrorCode::kAlphaOutOfRange);
  const NormalDerivative nd = lemma1_normal_derivative(t);
  CHECK(nd.predicted == doctest::Approx(0.0));
  CHECK(nd.actual == 0.0);
}

TEST_CASE("the capacitor potential is not a static potential") {
  const SchwarzschildData d(Dimension(3), 2.0, 2.0);
  const RadialMetric g = d.metric();
  const CapacitySolution phi = capacity_quadrature(g);
  // V = Φ (not of the form 1 + (α-1)Φ with V -> 1).
  const StaticTriple wrong(g, UnitField([phi](double r) {
                             RadialJet j = phi.potential_jet(r);
                             j.value -= 1.0;
                             return j;
                           }));
  CHECK(static_residuals(wrong).hessian_residual > 0.01);
  CHECK(error_code_of([&] { rigidity_pipeline(wrong); }) == ErrorCode::kNotStatic);
}

TEST_CASE("Smarr flux") {
  const StaticTriple t3 = schwarzschild_triple({Dimension(3), 2.0, 2.0});
  CHECK(smarr_integral(t3, default_flux_radii(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
  const StaticTriple t4 = schwarzschild_triple({Dimension(4), 2.0, 2.0});
  CHECK(smarr_integral(t4, {2.0, 3.0, 50.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(default_flux_radii(1.5).size() == 8);
  CHECK(default_flux_radii(1.5).back() == doctest::Approx(1.5 * 128.0));
  // Perturbed metric with the Schwarzschild potential: flux is not conserved.
  const Dimension n(3);
  const StaticTriple drift(RadialMetric(n, 2.0, ConformalProfile::perturbed(n, 2.0, {BumpTerm::screened(-0.5, 1.0)})),
                           static_potential_field(n, 2.0));
  CHECK(error_code_of([&] { smarr_integral(drift, default_flux_radii(2.0)); }) == ErrorCode::kFluxDrift);
}

TEST_CASE("normal derivative on an equipotential boundary") {
  const NormalDerivative nd = lemma1_normal_derivative(schwarzschild_triple({Dimension(3), 2.0, 2.0}));
  CHECK(nd.predicted == doctest::Approx(0.09876543209876543).epsilon(1e-13));
  CHECK(rel(nd.actual, nd.predicted) < 1e-8);
  for (int k : {4, 5, 7}) {
    const NormalDerivative e = lemma1_normal_derivative(schwarzschild_triple({Dimension(k), 2.0, 2.0}));
    CHECK(rel(e.actual, e.predicted) < 1e-8);
  }
  CHECK(error_code_of([] { lemma1_normal_derivative(schwarzschild_triple({Dimension(3), 2.0, 1.0})); }) ==
        ErrorCode::kZeroMeanCurvature);
}

TEST_CASE("contracted Gauss equation on coordinate spheres") {
  oracle::Rng rng(2718);
  for (int i = 0; i < 60; ++i) {
    const int k = rng.integer(3, 7);
    const Dimension n(k);
    const double m = rng.uniform(0.0, 2.0), r0 = rng.uniform(1.0, 4.0);
    const double a = -rng.uniform(0.0, 0.5), rate = rng.uniform(0.3, 2.0);
    const RadialMetric g(n, r0, ConformalProfile::perturbed(n, m, {BumpTerm::screened(a, rate)}));
    if (!(m / 2.0 + a * std::exp(-rate * r0) < std::pow(r0, k - 2) * 0.9)) continue;
    const double r = r0 * rng.uniform(1.0, 5.0);
    const GaussStep s = gauss_step(g, r);
    CHECK(s.residual <= 1e-8 * std::max(1.0, std::abs(s.gauss_side)));
  }
}

TEST_CASE("rigidity pipeline") {
  const RigidityReport r = rigidity_pipeline(schwarzschild_triple({Dimension(3), 2.0, 2.0}));
  CHECK(r.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r.c == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(r.mass_boundary == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.mass_smarr == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.mass_adm == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.capacity_potential == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(r.capacity_quadrature == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(r.gap) <= 1e-8);
  CHECK(r.reconstructed.mass == doctest::Approx(2.0).epsilon(1e-10));

  SUBCASE("photon sphere boundary, n=3, m=1") {
    const double rs = photon_sphere_radius(Dimension(3), 1.0);
    const RigidityReport p = rigidity_pipeline(schwarzschild_triple({Dimension(3), 1.0, rs}));
    CHECK(p.c == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p.reconstructed.mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.reconstructed.r0 == doctest::Approx(rs).epsilon(1e-12));
  }
  SUBCASE("suite") {
    for (int k : {3, 4, 5, 7})
      for (double m : {0.5, 1.0, 2.0})
        for (double r0 : {1.5, 2.0, 4.0}) {
          if (m / (2.0 * std::pow(r0, k - 2)) >= 1.0) continue;
          const RigidityReport s = rigidity_pipeline(schwarzschild_triple({Dimension(k), m, r0}));
          CHECK(std::abs(s.gap) <= 1e-8 * std::max(1.0, m));
          CHECK(rel(s.residuals.smarr_mass, m) < 1e-6);
          CHECK(rel(s.residuals.expansion_mass, m) < 1e-6);
        }
  }
}

TEST_CASE("potential triples on non-Schwarzschild metrics are rejected") {
  const Dimension n(3);
  const RadialMetric g(n, 2.0, ConformalProfile::perturbed(n, 2.0, {BumpTerm::screened(-0.5, 1.0)}));
  const StaticTriple t = potential_triple(g, capacity_quadrature(g), 0.44);
  CHECK(t.alpha_boundary == doctest::Approx(0.44).epsilon(1e-14));
  CHECK(error_code_of([&] { rigidity_pipeline(t); }) == ErrorCode::kNotStatic);
}
