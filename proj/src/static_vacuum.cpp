#include "capmass/static_vacuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capmass/conformal_proof.hpp"
#include "capmass/critical.hpp"
#include "capmass/errors.hpp"

namespace capmass {
namespace {

// Radial derivatives of f = (2/(n-2)) log u, differentiated in t = log r.
// Fourth-order stencils; one-sided when the central stencil would reach
// below r0.
struct LogFactorJet {
  double d1 = 0.0;
  double d2 = 0.0;
};

LogFactorJet log_factor_jet(const RadialMetric& metric, double r, double h) {
  const double scale = 2.0 / (metric.dimension().real() - 2.0);
  const auto& profile = metric.profile();
  const double t = std::log(r);
  auto f = [&](int k) { return scale * std::log1p(profile.deviation(std::exp(t + k * h)).value); };

  double ft = 0.0;
  double ftt = 0.0;
  if (r * std::exp(-2.0 * h) >= metric.r0()) {
    const double m2 = f(-2), m1 = f(-1), z = f(0), p1 = f(1), p2 = f(2);
    ft = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    ftt = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
  } else {
    double v[6];
    for (int k = 0; k < 6; ++k) v[k] = f(k);
    ft = (-25.0 / 12.0 * v[0] + 4.0 * v[1] - 3.0 * v[2] + 4.0 / 3.0 * v[3] - 0.25 * v[4]) / h;
    ftt = (15.0 / 4.0 * v[0] - 77.0 / 6.0 * v[1] + 107.0 / 6.0 * v[2] - 13.0 * v[3] + 61.0 / 12.0 * v[4] -
           5.0 / 6.0 * v[5]) /
          (h * h);
  }
  return {ft / r, (ftt - ft) / (r * r)};
}

// Coordinate components of Ric for g = e^{2f} δ, radial f.
struct RicciComponents {
  double radial = 0.0;
  double tangential = 0.0;  // coefficient of the round metric dΩ² scaled by r²
};

RicciComponents ricci(double nd, double r, const LogFactorJet& f) {
  return {-(nd - 1.0) * f.d2 - (nd - 1.0) * f.d1 / r,
          -f.d2 - (2.0 * nd - 3.0) * f.d1 / r - (nd - 2.0) * f.d1 * f.d1};
}

double flux(const RadialMetric& metric, const UnitField& v, double r) {
  const Dimension n = metric.dimension();
  const double u = metric.profile()(r);
  return sphere_volume(n) * std::pow(r, n.real() - 1.0) * u * u * v.deviation(r).d1;
}

}  // namespace

StaticTriple::StaticTriple(RadialMetric m, UnitField v)
    : metric(std::move(m)), potential(std::move(v)), alpha_boundary(potential(metric.r0())) {}

StaticTriple schwarzschild_triple(const SchwarzschildData& data) {
  return StaticTriple(data.metric(), static_potential_field(data.n, data.mass));
}

StaticTriple potential_triple(const RadialMetric& metric, const CapacitySolution& phi, double alpha) {
  return StaticTriple(metric, UnitField([phi, alpha](double r) { return (alpha - 1.0) * phi.potential_jet(r); }));
}

StaticResiduals static_residuals(const StaticTriple& triple, const StaticOptions& options) {
  const RadialMetric& metric = triple.metric;
  const double nd = metric.dimension().real();
  const int samples = std::max(2, options.samples);
  const double t0 = std::log(metric.r0());
  const double span = std::log(options.span);

  StaticResiduals out;
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp(t0 + span * double(i) / double(samples - 1));
    const LogFactorJet f = log_factor_jet(metric, r, options.log_step);
    const RadialJet v = triple.potential.jet(r);
    const RicciComponents ric = ricci(nd, r, f);
    const double hess_rr = v.d2 - f.d1 * v.d1;
    const double hess_tan = v.d1 / r + f.d1 * v.d1;
    const double lap = v.d2 + (nd - 1.0) * v.d1 / r + (nd - 2.0) * f.d1 * v.d1;
    // Orthonormal components carry 1/e^{2f}; the r^2 weight is multiplied by
    // the same factor, so coordinate components times r^2 are reported.
    out.hessian_radial = std::max(out.hessian_radial, r * r * std::abs(hess_rr - v.value * ric.radial));
    out.hessian_tangential = std::max(out.hessian_tangential, r * r * std::abs(hess_tan - v.value * ric.tangential));
    out.laplace_residual = std::max(out.laplace_residual, r * r * std::abs(lap));
  }
  out.hessian_residual = std::max(out.hessian_radial, out.hessian_tangential);

  const UnitField& potential = triple.potential;
  auto scaled = [&](double r) { return -std::pow(r, nd - 2.0) * potential.deviation(r).value; };
  const GeometricLimit lim =
      extrapolate_geometric(scaled, options.radius_factor * metric.r0(), options.tolerance);
  out.expansion_stable = lim.stable;
  out.expansion_mass = lim.stable ? lim.limit : std::numeric_limits<double>::quiet_NaN();
  out.smarr_mass = smarr_integral(triple, default_flux_radii(metric.r0()), options.tolerance);
  return out;
}

std::vector<double> default_flux_radii(double r0) {
  std::vector<double> radii;
  for (int k = 0; k < 8; ++k) radii.push_back(r0 * std::ldexp(1.0, k));
  return radii;
}

double smarr_integral(const StaticTriple& triple, const std::vector<double>& radii, double tolerance) {
  if (radii.empty()) throw Error(ErrorCode::kInvalidArgument, "smarr_integral needs at least one radius");
  const Dimension n = triple.metric.dimension();
  std::vector<double> fluxes;
  for (double r : radii) fluxes.push_back(flux(triple.metric, triple.potential, r));
  const auto [lo, hi] = std::minmax_element(fluxes.begin(), fluxes.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo > tolerance * scale)
    throw Error(ErrorCode::kFluxDrift, "flux of ∇V varies across spheres by " + std::to_string(*hi - *lo));
  return fluxes.front() / ((n.real() - 2.0) * sphere_volume(n));
}

NormalDerivative lemma1_normal_derivative(const StaticTriple& triple) {
  const RadialMetric& metric = triple.metric;
  const Dimension n = metric.dimension();
  const BoundaryGeometry b = boundary_geometry(metric);
  if (b.mean_curvature == 0.0) throw Error(ErrorCode::kZeroMeanCurvature, "H = 0 on the boundary");
  const double k = n.gauss_ratio();
  const double f = b.scalar_curvature / (k * b.mean_curvature * b.mean_curvature);
  NormalDerivative out;
  out.predicted = 0.5 * k * ((f - 1.0) * b.mean_curvature +
                             b.traceless_norm * b.traceless_norm / b.mean_curvature) *
                  triple.alpha_boundary;
  out.actual = metric.normal_derivative(metric.r0(), triple.potential.deviation(metric.r0()).d1);
  return out;
}

GaussStep gauss_step(const RadialMetric& metric, double r, double log_step) {
  const Dimension n = metric.dimension();
  const double nd = n.real();
  const LogFactorJet f = log_factor_jet(metric, r, log_step);
  const double e2f = std::pow(metric.length_scale(r), 2.0);
  const BoundaryGeometry b = sphere_geometry(metric, r);
  GaussStep out;
  out.twice_ric_normal = 2.0 * ricci(nd, r, f).radial / e2f;
  out.gauss_side = scalar_curvature(metric, r) + n.gauss_ratio() * b.mean_curvature * b.mean_curvature -
                   b.scalar_curvature - b.traceless_norm * b.traceless_norm;
  out.residual = std::abs(out.twice_ric_normal - out.gauss_side);
  return out;
}

RigidityReport rigidity_pipeline(const StaticTriple& triple, const RigidityOptions& options) {
  const RadialMetric& metric = triple.metric;
  const Dimension n = metric.dimension();
  const double nd = n.real();
  RigidityReport rep;

  rep.residuals = static_residuals(triple, options.statics);
  if (rep.residuals.hessian_residual > options.static_tolerance ||
      rep.residuals.laplace_residual > options.static_tolerance)
    throw Error(ErrorCode::kNotStatic, "static equations fail with residual " +
                                           std::to_string(std::max(rep.residuals.hessian_residual,
                                                                   rep.residuals.laplace_residual)));

  if (!rep.residuals.expansion_stable)
    throw Error(ErrorCode::kNotStatic, "V does not approach 1 like r^{2-n}");
  rep.alpha = triple.alpha_boundary;
  if (!(rep.alpha > 0.0 && rep.alpha < 1.0))
    throw Error(ErrorCode::kAlphaOutOfRange, "boundary value V|Σ = " + std::to_string(rep.alpha) + " not in (0, 1)");

  const BoundaryGeometry b = boundary_geometry(metric);
  if (!(b.mean_curvature > 0.0)) throw Error(ErrorCode::kZeroMeanCurvature, "rigidity needs H > 0");
  rep.mean_curvature = b.mean_curvature;
  rep.c = check_scalar_mean_hypothesis(b, n).c;
  if (!(rep.c > 1.0)) throw Error(ErrorCode::kInvalidArgument, "rigidity needs c > 1");

  const double omega = sphere_volume(n);
  rep.mass_smarr = rep.residuals.smarr_mass;
  rep.mass_boundary = 0.5 * rep.alpha * (rep.c - 1.0) / ((nd - 1.0) * omega) * b.mean_curvature * b.area;
  rep.mass_adm = adm_mass(metric, options.adm);

  // Φ = (1-V)/(1-α): flux of Φ through Σ gives its capacity.
  const double dphi = -metric.normal_derivative(metric.r0(), triple.potential.deviation(metric.r0()).d1) /
                      (1.0 - rep.alpha);
  rep.capacity_potential = -dphi * b.area / ((nd - 2.0) * omega);
  rep.capacity_quadrature = capacity_quadrature(metric, options.quadrature).capacity();

  rep.gap = rep.mass_adm - (1.0 - rep.alpha) * rep.capacity_quadrature;
  const double tol = options.equality_tolerance * std::max(1.0, std::abs(rep.mass_adm));
  if (std::abs(rep.gap) > tol)
    throw Error(ErrorCode::kEqualityGapExceeded, "m - (1-α)C = " + std::to_string(rep.gap));

  // ḡ = ((1+V)/2)^{4/(n-2)} g is flat; its boundary radius is r_α.
  const double psi = 0.5 * (1.0 + rep.alpha);
  const double r_alpha = metric.r0() * std::pow(metric.profile()(metric.r0()) * psi, 2.0 / (nd - 2.0));
  rep.reconstructed = equality_reconstruction(n, r_alpha, rep.alpha);
  return rep;
}

}  // namespace capmass
