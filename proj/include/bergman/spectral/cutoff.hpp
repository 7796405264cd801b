#pragma once

namespace bergman::spectral {

/// Radial cutoff chi(r / scale) built from the quintic smoothstep: equal to 1
/// for r <= scale / 2, 0 for r >= scale, and C^2 in between.
class CutoffFunction {
 public:
  explicit CutoffFunction(double scale = 1.0);

  double scale() const { return scale_; }
  double operator()(double r) const;
  /// First and second derivatives in r.
  double d1(double r) const;
  double d2(double r) const;

  static double profile(double r);
  static double profile_d1(double r);
  static double profile_d2(double r);

 private:
  double scale_;
};

}  // namespace bergman::spectral
