#include "capmass/pmt_fillin.hpp"

#include <algorithm>
#include <cmath>

#include "capmass/errors.hpp"

namespace capmass {
namespace {

constexpr double kSlack = 1e-12;

bool geq_relaxed(double a, double b) {
  return a >= b - kSlack * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

DiracCheck dirac_eigenvalue_check(const BoundaryGeometry& boundary, Dimension n) {
  const double nd = n.real();
  const double h = boundary.mean_curvature;
  DiracCheck out;
  out.lambda1 = (nd - 1.0) / (2.0 * boundary.induced_radius);
  out.friedrich_bound = std::sqrt(std::max(0.0, (nd - 1.0) * boundary.scalar_curvature / (4.0 * (nd - 2.0))));
  out.herzlich_ok = geq_relaxed(out.lambda1, 0.5 * h);
  out.friedrich_ok = geq_relaxed(out.friedrich_bound, 0.5 * h);
  out.hypothesis = geq_relaxed(boundary.scalar_curvature, n.gauss_ratio() * h * h);
  return out;
}

double ConicalFillIn::scalar_curvature(double r) const {
  // g̃ = dr² + φ² γ, φ = r/a: R̃ = S/φ² - 2(n-1)φ''/φ - (n-1)(n-2)φ'²/φ².
  const double nd = n.real();
  const double phi = warp(r);
  const double dphi = warp_derivative();
  return boundary.scalar_curvature / (phi * phi) - (nd - 1.0) * (nd - 2.0) * dphi * dphi / (phi * phi);
}

double ConicalFillIn::scalar_curvature_closed(double r) const {
  const double nd = n.real();
  return cone_r0 * cone_r0 / (r * r) *
         (boundary.scalar_curvature - (nd - 1.0) * (nd - 2.0) / (cone_r0 * cone_r0));
}

int ConicalFillIn::scalar_curvature_sign() const {
  const double nd = n.real();
  const double flat = (nd - 1.0) * (nd - 2.0);
  const double excess = boundary.scalar_curvature * cone_r0 * cone_r0 - flat;
  if (std::abs(excess) <= 1e-12 * flat) return 0;
  return (excess > 0.0) - (excess < 0.0);
}

bool ConicalFillIn::hypothesis() const {
  const double h = boundary.mean_curvature;
  return boundary.scalar_curvature >= n.gauss_ratio() * h * h;
}

ConicalFillIn conical_fillin(const BoundaryGeometry& boundary, Dimension n) {
  if (!(boundary.mean_curvature > 0.0))
    throw Error(ErrorCode::kZeroMeanCurvature, "conical fill-in needs max H > 0");
  ConicalFillIn out;
  out.n = n;
  out.boundary = boundary;
  out.cone_r0 = (n.real() - 1.0) / boundary.mean_curvature;
  const double a = out.cone_r0;
  out.slice_radius = out.warp(a) * boundary.induced_radius;
  out.slice_mean_curvature = (n.real() - 1.0) * out.warp_derivative() / out.warp(a);
  return out;
}

EuclideanGauss euclidean_gauss_identity(const BoundaryGeometry& boundary, Dimension n) {
  if (boundary.scalar_curvature < 0.0)
    throw Error(ErrorCode::kNegativeScalarCurvature, "boundary scalar curvature is negative");
  EuclideanGauss out;
  out.h0 = std::sqrt(boundary.scalar_curvature / n.gauss_ratio());
  out.residual = std::abs(boundary.scalar_curvature - n.gauss_ratio() * out.h0 * out.h0);
  out.dominates = geq_relaxed(out.h0, boundary.mean_curvature);
  return out;
}

}  // namespace capmass
