#include "bergman/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

// Two float64x2 registers hold the four canonical lanes {0,1} and {2,3}.
namespace bergman::simd::neon {
namespace {

inline double hsum(float64x2_t lo, float64x2_t hi) {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
         (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

double weighted_sum(const double* w, const double* f, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n4; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(w + i), vld1q_f64(f + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(w + i + 2), vld1q_f64(f + i + 2)));
  }
  double s = hsum(lo, hi);
  for (std::size_t i = n4; i < n; ++i) s = s + w[i] * f[i];
  return s;
}

cplx weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                   const double* bi, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  float64x2_t re[2] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
  float64x2_t im[2] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t h = 0; h < 2; ++h) {
      const std::size_t j = i + 2 * h;
      const float64x2_t vw = vld1q_f64(w + j);
      const float64x2_t var = vld1q_f64(ar + j), vai = vld1q_f64(ai + j);
      const float64x2_t vbr = vld1q_f64(br + j), vbi = vld1q_f64(bi + j);
      const float64x2_t r = vaddq_f64(vmulq_f64(var, vbr), vmulq_f64(vai, vbi));
      const float64x2_t m = vsubq_f64(vmulq_f64(vai, vbr), vmulq_f64(var, vbi));
      re[h] = vaddq_f64(re[h], vmulq_f64(vw, r));
      im[h] = vaddq_f64(im[h], vmulq_f64(vw, m));
    }
  }
  double sr = hsum(re[0], re[1]);
  double si = hsum(im[0], im[1]);
  for (std::size_t j = n4; j < n; ++j) {
    const double r = ar[j] * br[j] + ai[j] * bi[j];
    const double m = ai[j] * br[j] - ar[j] * bi[j];
    sr = sr + w[j] * r;
    si = si + w[j] * m;
  }
  return {sr, si};
}

void caxpy_sub(double are, double aim, const double* xr, const double* xi, double* yr,
               double* yi, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  const float64x2_t vr = vdupq_n_f64(are), vi = vdupq_n_f64(aim);
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t x_r = vld1q_f64(xr + i), x_i = vld1q_f64(xi + i);
    const float64x2_t pr = vsubq_f64(vmulq_f64(vr, x_r), vmulq_f64(vi, x_i));
    const float64x2_t pi = vaddq_f64(vmulq_f64(vr, x_i), vmulq_f64(vi, x_r));
    vst1q_f64(yr + i, vsubq_f64(vld1q_f64(yr + i), pr));
    vst1q_f64(yi + i, vsubq_f64(vld1q_f64(yi + i), pi));
  }
  for (std::size_t i = n2; i < n; ++i) {
    const double pr = are * xr[i] - aim * xi[i];
    const double pi = are * xi[i] + aim * xr[i];
    yr[i] = yr[i] - pr;
    yi[i] = yi[i] - pi;
  }
}

void cscale(double are, double aim, double* xr, double* xi, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  const float64x2_t vr = vdupq_n_f64(are), vi = vdupq_n_f64(aim);
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t x_r = vld1q_f64(xr + i), x_i = vld1q_f64(xi + i);
    vst1q_f64(xr + i, vsubq_f64(vmulq_f64(vr, x_r), vmulq_f64(vi, x_i)));
    vst1q_f64(xi + i, vaddq_f64(vmulq_f64(vr, x_i), vmulq_f64(vi, x_r)));
  }
  for (std::size_t i = n2; i < n; ++i) {
    const double r = are * xr[i] - aim * xi[i];
    const double m = are * xi[i] + aim * xr[i];
    xr[i] = r;
    xi[i] = m;
  }
}

void accumulate_norm2(const double* xr, const double* xi, double* acc, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t x_r = vld1q_f64(xr + i), x_i = vld1q_f64(xi + i);
    const float64x2_t s = vaddq_f64(vmulq_f64(x_r, x_r), vmulq_f64(x_i, x_i));
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), s));
  }
  for (std::size_t i = n2; i < n; ++i) acc[i] = acc[i] + (xr[i] * xr[i] + xi[i] * xi[i]);
}

}  // namespace

const KernelTable* table() {
  static const KernelTable t{Isa::neon, weighted_sum, weighted_cdot, caxpy_sub, cscale,
                             accumulate_norm2};
  return &t;
}

}  // namespace bergman::simd::neon

#else

namespace bergman::simd::neon {
const KernelTable* table() { return nullptr; }
}  // namespace bergman::simd::neon

#endif
