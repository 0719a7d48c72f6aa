#include "capmass/capacity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "capmass/errors.hpp"

namespace capmass {

std::string to_string(CapacityMethod method) {
  return method == CapacityMethod::kQuadrature ? "quadrature" : "variational";
}

CapacitySolution::CapacitySolution(CapacityMethod method, Dimension n, double r0, double capacity,
                                   double normal_derivative, double energy, PotentialFn potential)
    : method_(method),
      n_(n),
      r0_(r0),
      capacity_(capacity),
      normal_derivative_(normal_derivative),
      energy_(energy),
      potential_(std::make_shared<const PotentialFn>(std::move(potential))) {}

namespace {

using Rule = boost::math::quadrature::gauss<double, 10>;
using TailRule = boost::math::quadrature::gauss<double, 30>;

double checked_u(const ConformalProfile& profile, double r) {
  const double u = profile(r);
  if (!(u > 0.0))
    throw Error(ErrorCode::kNonPositiveConformalFactor, "u(" + std::to_string(r) + ") <= 0");
  return u;
}

// I(r) = ∫_r^∞ ds/(s^{n-1}u^2): composite Gauss-Legendre in t = log s on
// [r0, R_cut], then the substitution τ = s^{2-n} on the tail, where the
// integrand 1/((n-2)u^2) tends smoothly to 1/(n-2).
class RadialIntegral {
 public:
  RadialIntegral(const RadialMetric& metric, const QuadratureOptions& options)
      : profile_(metric.profile()), nd_(metric.dimension().real()) {
    t0_ = std::log(metric.r0());
    const double t_cut = std::log(options.cut_factor * metric.r0());
    panels_ = std::max<std::size_t>(1, std::size_t(std::ceil((t_cut - t0_) / options.panel_width)));
    step_ = (t_cut - t0_) / double(panels_);
    r_cut_ = std::exp(t_cut);

    const double tail_deviation = profile_.deviation(r_cut_).value;
    if (!(std::abs(tail_deviation) < 1e-2))
      throw Error(ErrorCode::kDivergentIntegral,
                  "u - 1 = " + std::to_string(tail_deviation) + " at the split radius");

    suffix_.assign(panels_ + 1, 0.0);
    for (std::size_t k = panels_; k-- > 0;)
      suffix_[k] = suffix_[k + 1] + inner(t0_ + step_ * double(k), t0_ + step_ * double(k + 1));
    tail_cut_ = tail(std::pow(r_cut_, 2.0 - nd_));
    if (!std::isfinite(suffix_[0] + tail_cut_) || !(suffix_[0] + tail_cut_ > 0.0))
      throw Error(ErrorCode::kDivergentIntegral, "radial capacity integral is not finite");
  }

  double operator()(double r) const {
    if (r >= r_cut_) return tail(std::pow(r, 2.0 - nd_));
    const double t = std::log(r);
    const auto k = std::min(panels_ - 1, std::size_t(std::max(0.0, std::floor((t - t0_) / step_))));
    const double t_next = t0_ + step_ * double(k + 1);
    return suffix_[k + 1] + inner(t, t_next) + tail_cut_;
  }

 private:
  double inner(double a, double b) const {
    return Rule::integrate(
        [&](double t) {
          const double s = std::exp(t);
          const double u = checked_u(profile_, s);
          return std::pow(s, 2.0 - nd_) / (u * u);
        },
        a, b);
  }

  double tail(double tau_max) const {
    return TailRule::integrate(
        [&](double tau) {
          const double s = std::pow(tau, -1.0 / (nd_ - 2.0));
          const double u = 1.0 + profile_.deviation(s).value;
          return 1.0 / ((nd_ - 2.0) * u * u);
        },
        0.0, tau_max);
  }

  ConformalProfile profile_;
  double nd_;
  double t0_ = 0.0;
  double step_ = 0.0;
  double r_cut_ = 0.0;
  std::size_t panels_ = 1;
  std::vector<double> suffix_;
  double tail_cut_ = 0.0;
};

// Flux-normalised radial derivatives of a harmonic Φ with r^{n-1}u^2Φ' = -flux.
RadialJet harmonic_derivatives(double nd, double r, const RadialJet& u, double flux) {
  const double w = std::pow(r, nd - 1.0) * u.value * u.value;
  return {0.0, -flux / w, flux * ((nd - 1.0) / r + 2.0 * u.d1 / u.value) / w};
}

}  // namespace

CapacitySolution capacity_quadrature(const RadialMetric& metric, const QuadratureOptions& options) {
  const Dimension n = metric.dimension();
  const double nd = n.real();
  const double r0 = metric.r0();
  auto integral = std::make_shared<const RadialIntegral>(metric, options);
  const double i0 = (*integral)(r0);
  const double flux = 1.0 / i0;  // r^{n-1} u^2 |Φ'|, constant in r

  const double capacity = flux / (nd - 2.0);
  const double du0 = -flux / (std::pow(r0, nd - 1.0) * std::pow(metric.profile()(r0), 2.0));
  const double normal = metric.normal_derivative(r0, du0);
  const double energy = (nd - 2.0) * sphere_volume(n) * capacity;

  auto potential = [integral, profile = metric.profile(), nd, i0, flux](double r) {
    RadialJet phi = harmonic_derivatives(nd, r, profile.jet(r), flux);
    phi.value = (*integral)(r) / i0;
    return phi;
  };
  return CapacitySolution(CapacityMethod::kQuadrature, n, r0, capacity, normal, energy,
                          std::move(potential));
}

// ---------------------------------------------------------------------------

namespace {

// Nodal P2 solution on a uniform grid in t = log r: vertex values at even
// indices, element midpoints at odd ones.
struct P2Potential {
  double t0;
  double h;
  std::vector<double> nodes;
  double r_max;
  double flux;
  double tail_a;  // u ~ 1 + tail_a r^{2-n} beyond r_max
  double nd;

  double tail_integral(double r) const {
    const double tau = std::pow(r, 2.0 - nd);
    return tau / ((nd - 2.0) * (1.0 + tail_a * tau));
  }

  RadialJet operator()(double r) const {
    if (r > r_max) {
      const double tau = std::pow(r, 2.0 - nd);
      const RadialJet u{1.0 + tail_a * tau, -(nd - 2.0) * tail_a * tau / r, 0.0};
      RadialJet phi = harmonic_derivatives(nd, r, u, flux);
      phi.value = flux * tail_integral(r);
      return phi;
    }
    const std::size_t elements = (nodes.size() - 1) / 2;
    const double x = (std::log(r) - t0) / h;
    const auto e = std::min(elements - 1, std::size_t(std::max(0.0, std::floor(x))));
    const double s = x - double(e);
    const double f0 = nodes[2 * e], fm = nodes[2 * e + 1], f1 = nodes[2 * e + 2];
    const double value = f0 * 2.0 * (s - 0.5) * (s - 1.0) + fm * 4.0 * s * (1.0 - s) + f1 * 2.0 * s * (s - 0.5);
    const double ds = f0 * (4.0 * s - 3.0) + fm * (4.0 - 8.0 * s) + f1 * (4.0 * s - 1.0);
    const double dss = 4.0 * f0 - 8.0 * fm + 4.0 * f1;
    const double ft = ds / h, ftt = dss / (h * h);
    return {value, ft / r, (ftt - ft) / (r * r)};
  }
};

}  // namespace

CapacitySolution capacity_variational(const RadialMetric& metric, const VariationalOptions& options) {
  if (options.grid_points < 3) throw Error(ErrorCode::kInvalidArgument, "variational grid needs >= 3 points");
  const Dimension n = metric.dimension();
  const double nd = n.real();
  const double r0 = metric.r0();
  const auto& profile = metric.profile();

  const double t0 = std::log(r0);
  const double r_max = options.r_max_factor * r0;
  const std::size_t vertices = std::size_t(options.grid_points);
  const std::size_t elements = vertices - 1;
  const double h = (std::log(r_max) - t0) / double(elements);

  // Energy density in t: r^{n-2} u^2 (dΦ/dt)^2. Element stiffness from
  // 6-point Gauss-Legendre, midpoint condensed out element by element.
  using ElementRule = boost::math::quadrature::gauss<double, 6>;
  std::vector<std::array<double, 3>> condensed(elements);  // {k00, k01, k11}
  std::vector<std::array<double, 3>> midpoint(elements);   // {kmm, km0, km1}
  for (std::size_t e = 0; e < elements; ++e) {
    const double ta = t0 + h * double(e);
    std::array<std::array<double, 3>, 3> k{};
    const auto& abscissa = ElementRule::abscissa();
    const auto& weights = ElementRule::weights();
    const auto accumulate = [&](double s, double wq) {
      const double r = std::exp(ta + h * s);
      const double u = checked_u(profile, r);
      const double density = std::pow(r, nd - 2.0) * u * u;
      const std::array<double, 3> dn = {4.0 * s - 3.0, 4.0 - 8.0 * s, 4.0 * s - 1.0};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) k[a][b] += wq * density * dn[a] * dn[b] / h;
    };
    // Boost stores the non-negative half of a symmetric rule on [-1, 1].
    for (std::size_t q = 0; q < abscissa.size(); ++q) {
      const double w = 0.5 * weights[q];
      accumulate(0.5 * (1.0 + abscissa[q]), w);
      if (abscissa[q] != 0.0) accumulate(0.5 * (1.0 - abscissa[q]), w);
    }
    const double kmm = k[1][1];
    condensed[e] = {k[0][0] - k[0][1] * k[1][0] / kmm, k[0][2] - k[0][1] * k[1][2] / kmm,
                    k[2][2] - k[2][1] * k[1][2] / kmm};
    midpoint[e] = {kmm, k[1][0], k[1][2]};
  }

  const double tail_a = 0.5 * adm_mass(metric);
  const auto tail_integral = [&](double r) {
    const double tau = std::pow(r, 2.0 - nd);
    return tau / ((nd - 2.0) * (1.0 + tail_a * tau));
  };
  const double i_tail = tail_integral(r_max);

  std::vector<double> f(vertices, 0.0);
  const auto solve = [&](double outer) {
    f.front() = 1.0;
    f.back() = outer;
    // Thomas algorithm on the interior rows of the condensed tridiagonal system.
    const std::size_t m = vertices - 2;
    std::vector<double> diag(m), upper(m), rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t v = i + 1;
      diag[i] = condensed[v - 1][2] + condensed[v][0];
      upper[i] = condensed[v][1];
      rhs[i] = 0.0;
    }
    rhs.front() -= condensed[0][1] * f.front();
    rhs.back() -= condensed[vertices - 2][1] * f.back();
    for (std::size_t i = 1; i < m; ++i) {
      const double factor = condensed[i][1] / diag[i - 1];
      diag[i] -= factor * upper[i - 1];
      rhs[i] -= factor * rhs[i - 1];
    }
    f[m] = rhs[m - 1] / diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) f[i + 1] = (rhs[i] - upper[i] * f[i + 2]) / diag[i];

    double residual = 0.0;
    for (std::size_t v = 1; v + 1 < vertices; ++v) {
      const double row = condensed[v - 1][1] * f[v - 1] +
                         (condensed[v - 1][2] + condensed[v][0]) * f[v] + condensed[v][1] * f[v + 1];
      residual = std::max(residual, std::abs(row) / (condensed[v][0] + condensed[v - 1][2]));
    }
    if (!(residual <= 1e-10))
      throw Error(ErrorCode::kNonConvergence, "tridiagonal solve residual " + std::to_string(residual));
    return condensed[0][0] * f[0] + condensed[0][1] * f[1];  // reaction = flux at r0
  };

  // The reaction is affine in the outer value, so the matching condition
  // v = flux(v) * I_tail is solved directly; the sweeps then confirm it.
  const double flux0 = solve(0.0);
  const double slope = solve(1.0) - flux0;
  double outer = flux0 * i_tail / (1.0 - slope * i_tail);
  double flux = solve(outer);
  double change = 0.0;
  for (int sweep = 0; sweep < options.tail_sweeps; ++sweep) {
    const double next = flux * i_tail;
    change = std::abs(next - outer);
    outer = next;
    flux = solve(outer);
  }
  if (!(change <= options.sweep_tolerance))
    throw Error(ErrorCode::kNonConvergence,
                "tail matching moved the outer value by " + std::to_string(change));

  double grid_energy = 0.0;
  for (std::size_t e = 0; e < elements; ++e) {
    const double a = f[e], b = f[e + 1];
    grid_energy += condensed[e][0] * a * a + 2.0 * condensed[e][1] * a * b + condensed[e][2] * b * b;
  }
  const double tail_energy = outer * outer / i_tail;
  const double omega = sphere_volume(n);
  const double energy = omega * (grid_energy + tail_energy);
  const double capacity = energy / ((nd - 2.0) * omega);

  const double u0 = profile(r0);
  const double normal = metric.normal_derivative(r0, -flux / (std::pow(r0, nd - 1.0) * u0 * u0));

  std::vector<double> nodes(2 * elements + 1);
  for (std::size_t e = 0; e < elements; ++e) {
    nodes[2 * e] = f[e];
    nodes[2 * e + 1] = -(midpoint[e][1] * f[e] + midpoint[e][2] * f[e + 1]) / midpoint[e][0];
  }
  nodes.back() = f.back();

  P2Potential potential{t0, h, std::move(nodes), r_max, flux, tail_a, nd};
  return CapacitySolution(CapacityMethod::kVariational, n, r0, capacity, normal, energy,
                          std::move(potential));
}

// ---------------------------------------------------------------------------

ExpansionFit capacity_from_expansion(const CapacitySolution& solution, Dimension n,
                                     double radius_factor, double tolerance) {
  const double nd = n.real();
  const GeometricLimit fit = extrapolate_geometric(
      [&](double r) { return std::pow(r, nd - 2.0) * solution.potential(r); },
      radius_factor * solution.r0(), tolerance);
  if (!fit.stable)
    throw Error(ErrorCode::kSlowDecay,
                "r^{n-2} Φ does not settle (spread " + std::to_string(fit.spread) + ")");
  return {fit.limit, fit.observed_exponent};
}

double capacity_from_flux(const RadialMetric& metric, const CapacitySolution& solution) {
  const Dimension n = metric.dimension();
  return -solution.normal_derivative() * metric.sphere_area(metric.r0()) /
         ((n.real() - 2.0) * sphere_volume(n));
}

double harmonic_residual(const RadialMetric& metric, const CapacitySolution& solution, int samples) {
  const double nd = metric.dimension().real();
  const auto& profile = metric.profile();
  const double t0 = std::log(metric.r0());
  const double h = std::log(100.0) / double(samples - 1);

  const auto count = static_cast<std::size_t>(samples);
  std::vector<double> r(count), phi(count);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = std::exp(t0 + h * double(i));
    phi[i] = solution.potential(r[i]);
  }
  const auto face_flux = [&](std::size_t i) {
    const double rm = std::sqrt(r[i] * r[i + 1]);
    const double u = profile(rm);
    return std::pow(rm, nd - 1.0) * u * u * (phi[i + 1] - phi[i]) / (r[i + 1] - r[i]);
  };
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double u = profile(r[i]);
    const double divergence = (face_flux(i) - face_flux(i - 1)) / (0.5 * (r[i + 1] - r[i - 1]));
    const double laplacian = std::pow(u, -2.0 * nd / (nd - 2.0)) * std::pow(r[i], 1.0 - nd) * divergence;
    worst = std::max(worst, r[i] * r[i] * std::abs(laplacian));
  }
  return worst;
}

}  // namespace capmass
