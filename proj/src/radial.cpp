#include "capmass/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace capmass {

RadialJet unit_product_deviation(const RadialJet& a, const RadialJet& b) {
  return {a.value + b.value + a.value * b.value,
          a.d1 + b.d1 + a.d1 * b.value + a.value * b.d1,
          a.d2 + b.d2 + a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

namespace {

struct AitkenEstimate {
  double limit;
  double ratio;
  bool decaying;
};

AitkenEstimate aitken(double f0, double f1, double f2, double scale) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double noise = 64.0 * eps * std::max({std::abs(f0), std::abs(f1), std::abs(f2), scale});
  const double d1 = f1 - f0;
  const double d2 = f2 - f1;
  if (std::abs(d2) <= noise) return {f2, 0.0, true};
  if (std::abs(d1) <= noise) return {f2, std::numeric_limits<double>::infinity(), false};
  const double q = d2 / d1;
  if (std::abs(q) >= 1.0) return {f2, q, false};
  return {f2 + d2 * q / (1.0 - q), q, true};
}

}  // namespace

GeometricLimit extrapolate_geometric(const std::function<double(double)>& f, double radius,
                                     double tolerance, double scale) {
  std::array<double, 4> samples{};
  for (int i = 0; i < 4; ++i) samples[i] = f(radius * std::ldexp(1.0, i));

  const AitkenEstimate near = aitken(samples[0], samples[1], samples[2], scale);
  const AitkenEstimate far = aitken(samples[1], samples[2], samples[3], scale);

  GeometricLimit out;
  out.limit = far.limit;
  out.ratio = far.ratio;
  out.observed_exponent = far.ratio > 0.0 ? -std::log2(far.ratio) : 0.0;
  out.spread = std::abs(far.limit - near.limit);
  const double reference = std::max({std::abs(far.limit), scale, 1e-14});
  out.stable = near.decaying && far.decaying && std::isfinite(out.limit) &&
               out.spread <= tolerance * reference;
  if (!out.stable) {
    // Samples already settled to within tolerance, e.g. interpolation noise
    // on tabulated data that Δ² cannot classify as decaying.
    double jump = 0.0;
    for (int i = 0; i < 3; ++i) jump = std::max(jump, std::abs(samples[i + 1] - samples[i]));
    const double settled = std::max({std::abs(samples[3]), scale, 1e-14});
    if (std::isfinite(samples[3]) && jump <= 0.5 * tolerance * settled) {
      out.limit = samples[3];
      out.spread = jump;
      out.stable = true;
    }
  }
  return out;
}

}  // namespace capmass
