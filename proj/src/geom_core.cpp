#include "capmass/geom_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "capmass/errors.hpp"

namespace capmass {

Dimension::Dimension(int n) : n_(n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 3, got " + std::to_string(n));
}

double sphere_volume(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "sphere_volume needs n >= 2");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

RadialJet BumpTerm::evaluate(Dimension n, double r) const {
  const double nd = n.real();
  switch (kind) {
    case Kind::kPower: {
      const double v = coef * std::pow(r, -exponent);
      return {v, -exponent * v / r, exponent * (exponent + 1.0) * v / (r * r)};
    }
    case Kind::kExponential: {
      const double v = coef * std::exp(-rate * r);
      return {v, -rate * v, rate * rate * v};
    }
    case Kind::kScreened: {
      const double g = std::exp(-rate * r);
      const double h = std::pow(r, 2.0 - nd);
      const double h1 = (2.0 - nd) * h / r;
      const double h2 = (2.0 - nd) * (1.0 - nd) * h / (r * r);
      return {coef * g * h, coef * g * (h1 - rate * h),
              coef * g * (rate * rate * h - 2.0 * rate * h1 + h2)};
    }
    case Kind::kGaussian: {
      const double z = (r - center) / width;
      const double v = coef * std::exp(-z * z);
      return {v, -2.0 * z / width * v, (4.0 * z * z - 2.0) / (width * width) * v};
    }
  }
  return {};
}

std::string to_string(BumpTerm::Kind kind) {
  switch (kind) {
    case BumpTerm::Kind::kPower: return "power";
    case BumpTerm::Kind::kExponential: return "exponential";
    case BumpTerm::Kind::kScreened: return "screened";
    case BumpTerm::Kind::kGaussian: return "gaussian";
  }
  return "unknown";
}

BumpTerm::Kind bump_kind_from_string(const std::string& name) {
  if (name == "power") return BumpTerm::Kind::kPower;
  if (name == "exponential") return BumpTerm::Kind::kExponential;
  if (name == "screened") return BumpTerm::Kind::kScreened;
  if (name == "gaussian") return BumpTerm::Kind::kGaussian;
  throw Error(ErrorCode::kInvalidArgument, "unknown perturbation term kind '" + name + "'");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kSchwarzschild: return "schwarzschild";
    case ProfileKind::kPerturbed: return "perturbed";
    case ProfileKind::kTabulated: return "tabulated";
    case ProfileKind::kProduct: return "product";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Tabulated profiles

namespace {

// Quintic Hermite basis on [0, 1]; rows are H0..H5 as polynomial coefficients
// in s (ascending powers). H0/H3 carry values, H1/H4 first and H2/H5 second
// derivatives at s = 0 / s = 1.
constexpr std::array<std::array<double, 6>, 6> kHermite = {{
    {1, 0, 0, -10, 15, -6},
    {0, 1, 0, -6, 8, -3},
    {0, 0, 0.5, -1.5, 1.5, -0.5},
    {0, 0, 0, 10, -15, 6},
    {0, 0, 0, -4, 7, -3},
    {0, 0, 0, 0.5, -1, 0.5},
}};

RadialJet eval_poly(const std::array<double, 6>& c, double s) {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  for (int k = 5; k >= 0; --k) {
    d2 = d2 * s + 2.0 * d1;
    d1 = d1 * s + v;
    v = v * s + c[k];
  }
  return {v, d1, d2};
}

}  // namespace

struct ConformalProfile::Table {
  Dimension n;
  double log_start;
  double step;  // uniform spacing in log r
  std::vector<double> w, wt, wtt;  // deviation and its log-derivatives at nodes
  double tail_coefficient;         // w = a r^{2-n} beyond the last node

  double last_radius() const { return std::exp(log_start + step * (w.size() - 1)); }

  RadialJet evaluate(double r) const {
    const double nd = n.real();
    if (r > last_radius()) {
      const double v = tail_coefficient * std::pow(r, 2.0 - nd);
      return {v, (2.0 - nd) * v / r, (2.0 - nd) * (1.0 - nd) * v / (r * r)};
    }
    const double t = std::log(r);
    const double x = (t - log_start) / step;
    std::size_t i = static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, double(w.size() - 2)));
    const double s = x - double(i);
    const double h = step;
    const std::array<double, 6> coeffs = {w[i], h * wt[i], h * h * wtt[i],
                                          w[i + 1], h * wt[i + 1], h * h * wtt[i + 1]};
    RadialJet jt{};
    for (int b = 0; b < 6; ++b) jt = jt + coeffs[b] * eval_poly(kHermite[b], s);
    const double w_t = jt.d1 / h;
    const double w_tt = jt.d2 / (h * h);
    return {jt.value, w_t / r, (w_tt - w_t) / (r * r)};
  }
};

ConformalProfile ConformalProfile::schwarzschild(Dimension n, double mass) {
  return ConformalProfile(n, Schwarzschild{mass});
}

ConformalProfile ConformalProfile::perturbed(Dimension n, double mass, std::vector<BumpTerm> terms) {
  for (const auto& term : terms) {
    if (term.kind == BumpTerm::Kind::kGaussian && !(term.width > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "gaussian term needs width > 0");
    if ((term.kind == BumpTerm::Kind::kExponential || term.kind == BumpTerm::Kind::kScreened) &&
        !(term.rate > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "exponential/screened term needs rate > 0");
    if (term.kind == BumpTerm::Kind::kPower && !(term.exponent > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "power term needs exponent > 0");
  }
  return ConformalProfile(n, Perturbed{mass, std::move(terms)});
}

ConformalProfile ConformalProfile::tabulated(Dimension n, std::vector<double> radii,
                                             std::vector<double> values) {
  const std::size_t count = radii.size();
  if (count < 6 || values.size() != count)
    throw Error(ErrorCode::kInvalidArgument, "tabulated profile needs >= 6 (radius, value) pairs");
  if (!(radii.front() > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tabulated radii must be positive");
  const double log_start = std::log(radii.front());
  const double step = (std::log(radii.back()) - log_start) / double(count - 1);
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tabulated radii must increase");
  for (std::size_t i = 0; i < count; ++i) {
    const double expected = std::exp(log_start + step * double(i));
    if (std::abs(radii[i] - expected) > 1e-9 * expected)
      throw Error(ErrorCode::kInvalidArgument, "tabulated radii must be log-uniform");
    if (!(values[i] > 0.0))
      throw Error(ErrorCode::kNonPositiveConformalFactor, "tabulated u must be positive");
  }

  auto table = std::make_shared<Table>(Table{n, log_start, step, {}, {}, {}, 0.0});
  auto& w = table->w;
  w.resize(count);
  for (std::size_t i = 0; i < count; ++i) w[i] = values[i] - 1.0;
  table->wt.resize(count);
  table->wtt.resize(count);
  const double h = step;
  const auto W = [&](std::ptrdiff_t i) { return w[static_cast<std::size_t>(i)]; };
  const auto last = static_cast<std::ptrdiff_t>(count - 1);
  for (std::ptrdiff_t i = 0; i <= last; ++i) {
    double d1, d2;
    if (i >= 2 && i <= last - 2) {
      d1 = (-W(i + 2) + 8 * W(i + 1) - 8 * W(i - 1) + W(i - 2)) / (12 * h);
      d2 = (-W(i + 2) + 16 * W(i + 1) - 30 * W(i) + 16 * W(i - 1) - W(i - 2)) / (12 * h * h);
    } else {
      // Fourth-order one-sided stencils, mirrored at the upper end.
      const bool lower = i < 2;
      const std::ptrdiff_t o = lower ? 0 : last;
      const double sgn = lower ? 1.0 : -1.0;
      const auto F = [&](int k) { return W(o + (lower ? k : -k)); };
      if ((lower ? i : last - i) == 0) {
        d1 = sgn * (-25 * F(0) + 48 * F(1) - 36 * F(2) + 16 * F(3) - 3 * F(4)) / (12 * h);
        d2 = (45 * F(0) - 154 * F(1) + 214 * F(2) - 156 * F(3) + 61 * F(4) - 10 * F(5)) /
             (12 * h * h);
      } else {
        d1 = sgn * (-3 * F(0) - 10 * F(1) + 18 * F(2) - 6 * F(3) + F(4)) / (12 * h);
        d2 = (10 * F(0) - 15 * F(1) - 4 * F(2) + 14 * F(3) - 6 * F(4) + F(5)) / (12 * h * h);
      }
    }
    table->wt[static_cast<std::size_t>(i)] = d1;
    table->wtt[static_cast<std::size_t>(i)] = d2;
  }
  table->tail_coefficient = w.back() * std::pow(radii.back(), n.real() - 2.0);
  return ConformalProfile(n, Tabulated{std::move(table)});
}

ConformalProfile ConformalProfile::product(const ConformalProfile& base, UnitField factor) {
  return ConformalProfile(base.n_, Product{std::make_shared<const ConformalProfile>(base), std::move(factor)});
}

ProfileKind ConformalProfile::kind() const noexcept {
  switch (data_.index()) {
    case 0: return ProfileKind::kSchwarzschild;
    case 1: return ProfileKind::kPerturbed;
    case 2: return ProfileKind::kTabulated;
    default: return ProfileKind::kProduct;
  }
}

double ConformalProfile::mass_parameter() const {
  if (const auto* s = std::get_if<Schwarzschild>(&data_)) return s->mass;
  if (const auto* p = std::get_if<Perturbed>(&data_)) return p->mass;
  throw Error(ErrorCode::kInvalidArgument, "profile kind has no mass parameter");
}

const std::vector<BumpTerm>& ConformalProfile::terms() const {
  static const std::vector<BumpTerm> none;
  if (const auto* p = std::get_if<Perturbed>(&data_)) return p->terms;
  return none;
}

double ConformalProfile::min_radius() const {
  const double exponent = 1.0 / (n_.real() - 2.0);
  if (const auto* s = std::get_if<Schwarzschild>(&data_))
    return s->mass < 0.0 ? std::pow(-0.5 * s->mass, exponent) : 0.0;
  if (const auto* p = std::get_if<Perturbed>(&data_))
    return p->mass < 0.0 ? std::pow(-0.5 * p->mass, exponent) : 0.0;
  if (const auto* t = std::get_if<Tabulated>(&data_)) return std::exp(t->table->log_start);
  return std::get<Product>(data_).base->min_radius();
}

RadialJet ConformalProfile::deviation(double r) const {
  const double nd = n_.real();
  const auto pole = [&](double mass) {
    const double v = 0.5 * mass * std::pow(r, 2.0 - nd);
    return RadialJet{v, (2.0 - nd) * v / r, (2.0 - nd) * (1.0 - nd) * v / (r * r)};
  };
  return std::visit(
      [&](const auto& d) -> RadialJet {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Schwarzschild>) {
          return pole(d.mass);
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          RadialJet out = pole(d.mass);
          for (const auto& term : d.terms) out = out + term.evaluate(n_, r);
          return out;
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          return d.table->evaluate(r);
        } else {
          return unit_product_deviation(d.base->deviation(r), d.factor.deviation(r));
        }
      },
      data_);
}

double ConformalProfile::deviation_magnitude(double r) const {
  const double nd = n_.real();
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Schwarzschild>) {
          return std::abs(0.5 * d.mass * std::pow(r, 2.0 - nd));
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          double sum = std::abs(0.5 * d.mass * std::pow(r, 2.0 - nd));
          for (const auto& term : d.terms) sum += std::abs(term.evaluate(n_, r).value);
          return sum;
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          return std::abs(d.table->evaluate(r).value);
        } else {
          const double a = d.base->deviation_magnitude(r);
          const double b = std::abs(d.factor.deviation(r).value);
          return a + b + a * b;
        }
      },
      data_);
}

RadialJet ConformalProfile::jet(double r) const {
  RadialJet j = deviation(r);
  j.value += 1.0;
  return j;
}

UnitField ConformalProfile::as_field() const {
  return UnitField([self = *this](double r) { return self.deviation(r); });
}

// ---------------------------------------------------------------------------

RadialMetric::RadialMetric(Dimension n, double r0, ConformalProfile profile, bool spin)
    : n_(n), r0_(r0), profile_(std::move(profile)), spin_(spin) {
  if (!(r0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "boundary radius r0 must be positive");
  if (!(profile_.dimension() == n))
    throw Error(ErrorCode::kInvalidArgument, "profile dimension does not match metric dimension");
  const double r_min = profile_.min_radius();
  const bool tabulated = profile_.kind() == ProfileKind::kTabulated;
  if (tabulated ? r0 < r_min * (1.0 - 1e-12) : !(r0 > r_min))
    throw Error(ErrorCode::kInvalidArgument,
                "r0 = " + std::to_string(r0) + " is not above the profile's inner radius " +
                    std::to_string(r_min));
}

double RadialMetric::length_scale(double r) const {
  const double u = profile_(r);
  if (!(u > 0.0))
    throw Error(ErrorCode::kNonPositiveConformalFactor, "u(" + std::to_string(r) + ") <= 0");
  return std::pow(u, 2.0 / (n_.real() - 2.0));
}

double RadialMetric::sphere_area(double r) const {
  const double rho = r * length_scale(r);
  return sphere_volume(n_) * std::pow(rho, n_.real() - 1.0);
}

BoundaryGeometry BoundaryGeometry::round_sphere(Dimension n, double rho, double mean_curvature) {
  if (!(rho > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sphere radius must be positive");
  BoundaryGeometry b;
  b.n = n;
  b.induced_radius = rho;
  b.area = sphere_volume(n) * std::pow(rho, n.real() - 1.0);
  b.scalar_curvature = (n.real() - 1.0) * (n.real() - 2.0) / (rho * rho);
  b.mean_curvature = mean_curvature;
  return b;
}

double sphere_mean_curvature(const RadialMetric& metric, double r) {
  const double nd = metric.dimension().real();
  const RadialJet u = metric.profile().jet(r);
  if (!(u.value > 0.0))
    throw Error(ErrorCode::kNonPositiveConformalFactor, "u(" + std::to_string(r) + ") <= 0");
  return std::pow(u.value, -nd / (nd - 2.0)) *
         ((nd - 1.0) / r * u.value + 2.0 * (nd - 1.0) / (nd - 2.0) * u.d1);
}

BoundaryGeometry sphere_geometry(const RadialMetric& metric, double r) {
  const double rho = r * metric.length_scale(r);
  return BoundaryGeometry::round_sphere(metric.dimension(), rho, sphere_mean_curvature(metric, r));
}

BoundaryGeometry boundary_geometry(const RadialMetric& metric) {
  return sphere_geometry(metric, metric.r0());
}

GeometricLimit adm_mass_fit(const RadialMetric& metric, const AdmOptions& options) {
  const double nd = metric.dimension().real();
  const auto& profile = metric.profile();
  const auto coefficient = [&](double r) {
    return 2.0 * std::pow(r, nd - 2.0) * profile.deviation(r).value;
  };
  const double radius = options.radius_factor * metric.r0();
  const double scale = 2.0 * std::pow(radius, nd - 2.0) * profile.deviation_magnitude(radius);
  return extrapolate_geometric(coefficient, radius, options.tolerance, scale);
}

double adm_mass(const RadialMetric& metric, const AdmOptions& options) {
  const GeometricLimit fit = adm_mass_fit(metric, options);
  if (!fit.stable)
    throw Error(ErrorCode::kSlowDecay,
                "2 r^{n-2}(u-1) does not settle (spread " + std::to_string(fit.spread) +
                    ", ratio " + std::to_string(fit.ratio) + ")");
  return fit.limit;
}

double scalar_curvature(const RadialMetric& metric, double r) {
  const double nd = metric.dimension().real();
  const RadialJet u = metric.profile().jet(r);
  if (!(u.value > 0.0))
    throw Error(ErrorCode::kNonPositiveConformalFactor, "u(" + std::to_string(r) + ") <= 0");
  const double laplacian = u.d2 + (nd - 1.0) * u.d1 / r;
  return -4.0 * (nd - 1.0) / (nd - 2.0) * std::pow(u.value, -(nd + 2.0) / (nd - 2.0)) * laplacian;
}

}  // namespace capmass
