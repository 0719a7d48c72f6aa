#include "capmass/schwarzschild.hpp"

#include <cmath>

#include "capmass/errors.hpp"

namespace capmass {

SchwarzschildData::SchwarzschildData(Dimension dim, double m, double radius)
    : n(dim), mass(m), r0(radius) {
  if (!(r0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r0 must be positive");
  if (!(mass_ratio() > -1.0))
    throw Error(ErrorCode::kInvalidArgument, "r0 must exceed (|m|/2)^{1/(n-2)} for m < 0");
}

double SchwarzschildData::mass_ratio() const { return 0.5 * mass / std::pow(r0, n.real() - 2.0); }

RadialMetric SchwarzschildData::metric() const {
  return RadialMetric(n, r0, ConformalProfile::schwarzschild(n, mass));
}

SchwarzschildReport schwarzschild_report(const SchwarzschildData& d) {
  const double nd = d.n.real();
  const double x = d.mass_ratio();
  if (x == 1.0)
    throw Error(ErrorCode::kDegenerateHorizon, "r0 = (m/2)^{1/(n-2)} is the minimal sphere");

  SchwarzschildReport out;
  out.rho = d.r0 * std::pow(1.0 + x, 2.0 / (nd - 2.0));
  out.mean_curvature = (nd - 1.0) / d.r0 * (1.0 - x) * std::pow(1.0 + x, -nd / (nd - 2.0));
  out.scalar_curvature = (nd - 1.0) * (nd - 2.0) / (out.rho * out.rho);
  out.normal_derivative = -(nd - 2.0) / d.r0 * std::pow(1.0 + x, -nd / (nd - 2.0));
  out.lambda = 2.0 / (1.0 - x);
  out.capacity = 0.5 * d.mass + std::pow(d.r0, nd - 2.0);
  const double ratio = (1.0 + x) / (1.0 - x);
  out.c = ratio * ratio;
  out.boundary_potential = (1.0 - x) / (1.0 + x);
  out.alpha = out.boundary_potential;
  return out;
}

RadialJet capacity_potential_jet(const SchwarzschildData& d, double r) {
  // Φ = (1+x) r0^{n-2} / (r^{n-2} + m/2), written through s = r^{n-2}.
  const double nd = d.n.real();
  const double k = (1.0 + d.mass_ratio()) * std::pow(d.r0, nd - 2.0);
  const double s = std::pow(r, nd - 2.0);
  const double s1 = (nd - 2.0) * s / r;
  const double s2 = (nd - 2.0) * (nd - 3.0) * s / (r * r);
  const double q = s + 0.5 * d.mass;
  return {k / q, -k * s1 / (q * q), k * (2.0 * s1 * s1 / (q * q * q) - s2 / (q * q))};
}

double capacity_potential(const SchwarzschildData& d, double r) {
  return capacity_potential_jet(d, r).value;
}

double static_potential(const SchwarzschildData& d, double r) {
  return static_potential_field(d.n, d.mass)(r);
}

UnitField static_potential_field(Dimension n, double mass) {
  return UnitField([n, mass](double r) {
    // V - 1 = -2y/(1+y) = -m / (r^{n-2} + m/2).
    const double nd = n.real();
    const double s = std::pow(r, nd - 2.0);
    const double s1 = (nd - 2.0) * s / r;
    const double s2 = (nd - 2.0) * (nd - 3.0) * s / (r * r);
    const double q = s + 0.5 * mass;
    return RadialJet{-mass / q, mass * s1 / (q * q),
                     -mass * (2.0 * s1 * s1 / (q * q * q) - s2 / (q * q))};
  });
}

double photon_sphere_radius(Dimension n, double mass) {
  if (!(mass > 0.0)) throw Error(ErrorCode::kInvalidArgument, "photon sphere needs m > 0");
  const double nd = n.real();
  return std::pow(0.5 * mass * (nd - 1.0 + std::sqrt(nd * (nd - 2.0))), 1.0 / (nd - 2.0));
}

}  // namespace capmass
