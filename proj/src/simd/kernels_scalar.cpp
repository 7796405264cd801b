#include "bergman/simd/kernels.hpp"

namespace bergman::simd::scalar {
namespace {

double weighted_sum(const double* w, const double* f, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) lane[l] = lane[l] + w[i + l] * f[i + l];
  }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = n4; i < n; ++i) s = s + w[i] * f[i];
  return s;
}

cplx weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                   const double* bi, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  double re[4] = {0.0, 0.0, 0.0, 0.0};
  double im[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const std::size_t j = i + l;
      const double r = ar[j] * br[j] + ai[j] * bi[j];
      const double m = ai[j] * br[j] - ar[j] * bi[j];
      re[l] = re[l] + w[j] * r;
      im[l] = im[l] + w[j] * m;
    }
  }
  double sr = (re[0] + re[1]) + (re[2] + re[3]);
  double si = (im[0] + im[1]) + (im[2] + im[3]);
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
  for (std::size_t i = 0; i < n; ++i) {
    const double pr = are * xr[i] - aim * xi[i];
    const double pi = are * xi[i] + aim * xr[i];
    yr[i] = yr[i] - pr;
    yi[i] = yi[i] - pi;
  }
}

void cscale(double are, double aim, double* xr, double* xi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = are * xr[i] - aim * xi[i];
    const double m = are * xi[i] + aim * xr[i];
    xr[i] = r;
    xi[i] = m;
  }
}

void accumulate_norm2(const double* xr, const double* xi, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = acc[i] + (xr[i] * xr[i] + xi[i] * xi[i]);
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::scalar, weighted_sum, weighted_cdot, caxpy_sub, cscale,
                             accumulate_norm2};
  return t;
}

}  // namespace bergman::simd::scalar
