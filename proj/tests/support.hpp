#pragma once

// Independent reference formulas and a seeded generator for property tests.
// Nothing here calls into the library's own closed forms.

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// splitmix64; fixed seeds keep property runs reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * double(next() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + int(next() % std::uint64_t(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

inline double rel(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Area of the unit (n-1)-sphere through ω_{k} = ω_{k-1} ∫_0^π sin^{k-1}θ dθ.
inline double sphere_area_recursive(int n) {
  double w = 2.0 * kPi;  // circle
  for (int k = 2; k < n; ++k)
    w *= simpson([k](double t) { return std::pow(std::sin(t), k - 1); }, 0.0, kPi, 2000);
  return w;
}

// Capacity of {r >= r0} for g = u^{4/(n-2)} δ. Flux conservation gives
// r^{n-1} u^2 Φ' = const; in s = (r0/r)^{n-2} this is C = r0^{n-2} / ∫_0^1 u^{-2} ds.
inline double capacity_simpson(int n, double r0, const std::function<double(double)>& u) {
  const auto integrand = [&](double s) {
    if (s <= 0.0) return 1.0;
    const double v = u(r0 * std::pow(s, -1.0 / (n - 2)));
    return 1.0 / (v * v);
  };
  return std::pow(r0, n - 2) / simpson(integrand, 0.0, 1.0);
}

// Schwarzschild in areal radius ρ: g = dρ²/V² + ρ² γ, V² = 1 - 2m/ρ^{n-2}.
struct Areal {
  double rho, mean_curvature, scalar_curvature, lapse;
};
inline Areal schwarzschild_areal(int n, double m, double r0) {
  const double x = m / (2.0 * std::pow(r0, n - 2));
  const double rho = r0 * std::pow(1.0 + x, 2.0 / (n - 2));
  const double lapse = (1.0 - x) / (1.0 + x);  // equals sqrt(1 - 2m/ρ^{n-2}) outside the horizon
  return {rho, (n - 1) * lapse / rho, (n - 1.0) * (n - 2.0) / (rho * rho), lapse};
}

// ∂Φ/∂ν on the boundary from the same flux constant.
inline double boundary_flux_derivative(int n, double r0, double capacity, double u0) {
  const double coordinate = -(n - 2) * capacity * std::pow(r0, 1 - n) / (u0 * u0);
  return coordinate / std::pow(u0, 2.0 / (n - 2));
}

// Bisection on a bracketing interval.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
