#pragma once

// Radial scalar fields and far-field extrapolation shared by every module.

#include <functional>
#include <memory>

namespace capmass {

/// Value and first two radial derivatives of a function of r.
struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

inline RadialJet operator*(double s, const RadialJet& j) { return {s * j.value, s * j.d1, s * j.d2}; }
inline RadialJet operator+(const RadialJet& a, const RadialJet& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

/// Leibniz rule for (1 + a)(1 + b) - 1 = a + b + ab, written on deviations.
RadialJet unit_product_deviation(const RadialJet& a, const RadialJet& b);

/// A radial function f = 1 + w that tends to 1 at infinity, stored through
/// its deviation w. Far-field quantities such as r^{n-2}(f - 1) are then
/// computed without cancellation, which matters once r^{2-n} drops below
/// double resolution (n = 7 at r ~ 10^3 already does).
class UnitField {
 public:
  using DeviationFn = std::function<RadialJet(double)>;

  UnitField() : deviation_(std::make_shared<DeviationFn>([](double) { return RadialJet{}; })) {}
  explicit UnitField(DeviationFn deviation)
      : deviation_(std::make_shared<DeviationFn>(std::move(deviation))) {}

  static UnitField one() { return UnitField(); }

  RadialJet deviation(double r) const { return (*deviation_)(r); }
  double operator()(double r) const { return 1.0 + deviation(r).value; }
  RadialJet jet(double r) const {
    RadialJet d = deviation(r);
    d.value += 1.0;
    return d;
  }

 private:
  std::shared_ptr<const DeviationFn> deviation_;
};

/// Result of extrapolating f(R) as R -> infinity from geometric samples.
struct GeometricLimit {
  double limit = 0.0;
  double ratio = 0.0;              // successive-difference ratio, |ratio| < 1 when decaying
  double observed_exponent = 0.0;  // k in f ~ L + C R^{-k}; 0 when differences vanish
  double spread = 0.0;             // |estimate(R) - estimate(2R)|
  bool stable = false;
};

/// Aitken/Richardson extrapolation with unknown exponent: samples f at
/// R, 2R, 4R, 8R, forms the Δ² estimate on the first and last triple, and
/// reports stability when both agree to `tolerance` relative and the
/// differences decay. `scale` is the size of the terms f is assembled
/// from; differences below round-off of that size count as converged.
GeometricLimit extrapolate_geometric(const std::function<double(double)>& f, double radius,
                                     double tolerance, double scale = 0.0);

}  // namespace capmass
