#include "bergman/spectral/cutoff.hpp"

#include <cmath>

#include "bergman/errors.hpp"

namespace bergman::spectral {

namespace {

bool on_ramp(double r) { return r > 0.5 && r < 1.0; }

}  // namespace

CutoffFunction::CutoffFunction(double scale) : scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("cutoff scale must be positive");
}

double CutoffFunction::profile(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double x = 2.0 * r - 1.0;
  return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double CutoffFunction::profile_d1(double r) {
  if (!on_ramp(r)) return 0.0;
  const double x = 2.0 * r - 1.0;
  return -60.0 * x * x * (1.0 - x) * (1.0 - x);
}

double CutoffFunction::profile_d2(double r) {
  if (!on_ramp(r)) return 0.0;
  const double x = 2.0 * r - 1.0;
  return -240.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
}

double CutoffFunction::operator()(double r) const { return profile(r / scale_); }

double CutoffFunction::d1(double r) const { return profile_d1(r / scale_) / scale_; }

double CutoffFunction::d2(double r) const { return profile_d2(r / scale_) / (scale_ * scale_); }

}  // namespace bergman::spectral
