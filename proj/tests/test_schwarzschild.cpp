#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "capmass/schwarzschild.hpp"
#include "error_code.hpp"
#include "support.hpp"

using namespace capmass;
using oracle::rel;

TEST_CASE("report for n=3, m=2, r0=2") {
  const SchwarzschildReport r = schwarzschild_report({Dimension(3), 2.0, 2.0});
  CHECK(r.rho == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(r.mean_curvature == doctest::Approx(0.14814814814814814).epsilon(1e-14));
  CHECK(r.normal_derivative == doctest::Approx(-0.14814814814814814).epsilon(1e-14));
  CHECK(r.lambda == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r.capacity == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(r.c == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(r.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r.boundary_potential == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("flat exterior of the unit sphere") {
  for (int k = 3; k <= 7; ++k) {
    const SchwarzschildReport r = schwarzschild_report({Dimension(k), 0.0, 1.0});
    CHECK(r.rho == 1.0);
    CHECK(r.mean_curvature == doctest::Approx(k - 1.0));
    CHECK(r.normal_derivative == doctest::Approx(-(k - 2.0)));
    CHECK(r.lambda == doctest::Approx(2.0));
    CHECK(r.capacity == 1.0);
    CHECK(r.c == doctest::Approx(1.0));
    CHECK(r.alpha == doctest::Approx(1.0));
  }
}

TEST_CASE("negative mass, n=3, m=-1, r0=1") {
  const SchwarzschildReport r = schwarzschild_report({Dimension(3), -1.0, 1.0});
  CHECK(r.rho == doctest::Approx(0.25).epsilon(1e-15));  // r0 u(r0)^2 with u = 1/2
  CHECK(r.mean_curvature == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(r.lambda == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(r.capacity == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("horizon and inner radii") {
  CHECK(error_code_of([] { schwarzschild_report({Dimension(3), 2.0, 1.0}); }) == ErrorCode::kDegenerateHorizon);
  CHECK(error_code_of([] { SchwarzschildData(Dimension(3), -2.0, 0.5); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("capacity and static potentials") {
  const SchwarzschildData d(Dimension(3), 2.0, 2.0);
  CHECK(capacity_potential(d, 4.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(capacity_potential(d, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(static_potential(d, 4.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(static_potential(d, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(static_potential(d, 1e12) == doctest::Approx(1.0));
  for (int k : {3, 5}) {
    const SchwarzschildData flat(Dimension(k), 0.0, 1.5);
    CHECK(capacity_potential(flat, 3.0) == doctest::Approx(std::pow(2.0, -(k - 2))).epsilon(1e-15));
  }
  // Far-field deviation keeps relative accuracy where 1 - V underflows.
  const UnitField v = static_potential_field(Dimension(7), 2.0);
  const double r = 1e4;
  CHECK(rel(-v.deviation(r).value * std::pow(r, 5), 2.0) < 1e-12);
}

TEST_CASE("capacity potential jet matches differences") {
  const SchwarzschildData d(Dimension(4), 1.3, 1.1);
  for (double r : {1.1, 2.0, 7.0}) {
    const RadialJet j = capacity_potential_jet(d, r);
    const double h = 1e-4 * r;
    const double d1 = (capacity_potential(d, r + h) - capacity_potential(d, r - h)) / (2 * h);
    const double d2 =
        (capacity_potential(d, r + h) - 2 * capacity_potential(d, r) + capacity_potential(d, r - h)) / (h * h);
    CHECK(j.d1 == doctest::Approx(d1).epsilon(1e-8));
    CHECK(j.d2 == doctest::Approx(d2).epsilon(1e-5));
  }
}

TEST_CASE("photon sphere") {
  CHECK(photon_sphere_radius(Dimension(3), 1.0) == doctest::Approx((2.0 + std::sqrt(3.0)) / 2.0).epsilon(1e-15));
  CHECK(photon_sphere_radius(Dimension(3), 2.0) == doctest::Approx(3.7320508075688772).epsilon(1e-15));
  CHECK(photon_sphere_radius(Dimension(4), 2.0) == doctest::Approx(2.414213562373095).epsilon(1e-14));
  // Root-solve oracle: c(r0) = n/(n-2) on (r_h, ∞).
  for (int k : {3, 4, 5, 7}) {
    for (double m : {0.5, 1.0, 2.0}) {
      const Dimension n(k);
      const double horizon = std::pow(m / 2.0, 1.0 / (k - 2));
      const auto excess = [&](double r0) {
        return schwarzschild_report({n, m, r0}).c - double(k) / (k - 2);
      };
      const double root = oracle::bisect(excess, horizon * 1.0001, horizon * 100.0);
      const double rs = photon_sphere_radius(n, m);
      CHECK(rel(rs, root) < 1e-12);
      CHECK(std::abs(schwarzschild_report({n, m, rs}).c - double(k) / (k - 2)) < 1e-12);
    }
  }
}

TEST_CASE("identity chain on the Schwarzschild suite") {
  for (int k : {3, 4, 5, 7}) {
    for (double m : {0.5, 1.0, 2.0}) {
      for (double r0 : {1.5, 2.0, 4.0}) {
        const Dimension n(k);
        const SchwarzschildData d(n, m, r0);
        if (d.mass_ratio() >= 1.0) continue;
        const SchwarzschildReport r = schwarzschild_report(d);
        const oracle::Areal a = oracle::schwarzschild_areal(k, m, r0);
        const double x = d.mass_ratio();
        CHECK(rel(r.capacity, m / 2.0 + std::pow(r0, k - 2)) < 1e-15);
        CHECK(rel(r.capacity, oracle::capacity_simpson(k, r0, [&](double s) {
                    return 1.0 + m / (2.0 * std::pow(s, k - 2));
                  })) < 1e-12);
        CHECK(rel(r.lambda, 2.0 / (1.0 - x)) < 1e-13);
        CHECK(rel(r.c, std::pow((1 + x) / (1 - x), 2)) < 1e-13);
        CHECK(rel(r.mean_curvature, a.mean_curvature) < 1e-13);
        CHECK(rel(r.boundary_potential, a.lapse) < 1e-13);
        // α²c = 1 on every Schwarzschild sphere.
        CHECK(std::abs(r.alpha * r.alpha * r.c - 1.0) < 1e-13);
      }
    }
  }
}
