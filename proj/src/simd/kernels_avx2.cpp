#include "bergman/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#define BERGMAN_AVX2 __attribute__((target("avx2")))

namespace bergman::simd::avx2 {
namespace {

// Horizontal combine in the canonical order (l0 + l1) + (l2 + l3).
BERGMAN_AVX2 inline double hsum(__m256d v) {
  alignas(32) double l[4];
  _mm256_store_pd(l, v);
  return (l[0] + l[1]) + (l[2] + l[3]);
}

BERGMAN_AVX2 double weighted_sum(const double* w, const double* f, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i)));
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s = s + w[i] * f[i];
  return s;
}

BERGMAN_AVX2 cplx weighted_cdot(const double* w, const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d var = _mm256_loadu_pd(ar + i);
    const __m256d vai = _mm256_loadu_pd(ai + i);
    const __m256d vbr = _mm256_loadu_pd(br + i);
    const __m256d vbi = _mm256_loadu_pd(bi + i);
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(var, vbr), _mm256_mul_pd(vai, vbi));
    const __m256d m = _mm256_sub_pd(_mm256_mul_pd(vai, vbr), _mm256_mul_pd(var, vbi));
    re = _mm256_add_pd(re, _mm256_mul_pd(vw, r));
    im = _mm256_add_pd(im, _mm256_mul_pd(vw, m));
  }
  double sr = hsum(re);
  double si = hsum(im);
  for (std::size_t j = n4; j < n; ++j) {
    const double r = ar[j] * br[j] + ai[j] * bi[j];
    const double m = ai[j] * br[j] - ar[j] * bi[j];
    sr = sr + w[j] * r;
    si = si + w[j] * m;
  }
  return {sr, si};
}

BERGMAN_AVX2 void caxpy_sub(double are, double aim, const double* xr, const double* xi,
                            double* yr, double* yi, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  const __m256d vr = _mm256_set1_pd(are);
  const __m256d vi = _mm256_set1_pd(aim);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x_r = _mm256_loadu_pd(xr + i);
    const __m256d x_i = _mm256_loadu_pd(xi + i);
    const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(vr, x_r), _mm256_mul_pd(vi, x_i));
    const __m256d pi = _mm256_add_pd(_mm256_mul_pd(vr, x_i), _mm256_mul_pd(vi, x_r));
    _mm256_storeu_pd(yr + i, _mm256_sub_pd(_mm256_loadu_pd(yr + i), pr));
    _mm256_storeu_pd(yi + i, _mm256_sub_pd(_mm256_loadu_pd(yi + i), pi));
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double pr = are * xr[i] - aim * xi[i];
    const double pi = are * xi[i] + aim * xr[i];
    yr[i] = yr[i] - pr;
    yi[i] = yi[i] - pi;
  }
}

BERGMAN_AVX2 void cscale(double are, double aim, double* xr, double* xi, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  const __m256d vr = _mm256_set1_pd(are);
  const __m256d vi = _mm256_set1_pd(aim);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x_r = _mm256_loadu_pd(xr + i);
    const __m256d x_i = _mm256_loadu_pd(xi + i);
    _mm256_storeu_pd(xr + i, _mm256_sub_pd(_mm256_mul_pd(vr, x_r), _mm256_mul_pd(vi, x_i)));
    _mm256_storeu_pd(xi + i, _mm256_add_pd(_mm256_mul_pd(vr, x_i), _mm256_mul_pd(vi, x_r)));
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double r = are * xr[i] - aim * xi[i];
    const double m = are * xi[i] + aim * xr[i];
    xr[i] = r;
    xi[i] = m;
  }
}

BERGMAN_AVX2 void accumulate_norm2(const double* xr, const double* xi, double* acc,
                                   std::size_t n) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x_r = _mm256_loadu_pd(xr + i);
    const __m256d x_i = _mm256_loadu_pd(xi + i);
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(x_r, x_r), _mm256_mul_pd(x_i, x_i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), s));
  }
  for (std::size_t i = n4; i < n; ++i) acc[i] = acc[i] + (xr[i] * xr[i] + xi[i] * xi[i]);
}

}  // namespace

const KernelTable* table() {
  static const KernelTable t{Isa::avx2, weighted_sum, weighted_cdot, caxpy_sub, cscale,
                             accumulate_norm2};
  return &t;
}

}  // namespace bergman::simd::avx2

#else

namespace bergman::simd::avx2 {
const KernelTable* table() { return nullptr; }
}  // namespace bergman::simd::avx2

#endif
