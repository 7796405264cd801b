#pragma once
// Data-parallel inner loops shared by the quadrature and Gram code.
//
// Every reduction uses the same fixed order regardless of the instruction
// set: four interleaved partial sums (element i feeds lane i % 4), combined
// as (l0 + l1) + (l2 + l3), followed by the tail in index order. The scalar
// reference replays that order exactly, so all variants agree bit for bit.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace bergman::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_i w[i] * f[i]
  double (*weighted_sum)(const double* w, const double* f, std::size_t n);
  // sum_i w[i] * a[i] * conj(b[i]), split re/im storage
  cplx (*weighted_cdot)(const double* w, const double* ar, const double* ai, const double* br,
                        const double* bi, std::size_t n);
  // y[i] -= alpha * x[i]
  void (*caxpy_sub)(double alpha_re, double alpha_im, const double* xr, const double* xi,
                    double* yr, double* yi, std::size_t n);
  // x[i] *= alpha
  void (*cscale)(double alpha_re, double alpha_im, double* xr, double* xi, std::size_t n);
  // acc[i] += |x[i]|^2
  void (*accumulate_norm2)(const double* xr, const double* xi, double* acc, std::size_t n);
};

namespace scalar {
const KernelTable& table();
}
namespace avx2 {
const KernelTable* table();  // nullptr when not compiled in
}
namespace neon {
const KernelTable* table();
}

/// Best supported table, chosen once at first use. A thread-local override
/// (see ScopedIsa) takes precedence.
const KernelTable& active();
const KernelTable& table_for(Isa isa);

class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa);
  ~ScopedIsa();
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  const KernelTable* previous_;
};

inline double weighted_sum(std::span<const double> w, std::span<const double> f) {
  return active().weighted_sum(w.data(), f.data(), w.size());
}

inline cplx weighted_cdot(std::span<const double> w, std::span<const double> ar,
                          std::span<const double> ai, std::span<const double> br,
                          std::span<const double> bi) {
  return active().weighted_cdot(w.data(), ar.data(), ai.data(), br.data(), bi.data(), w.size());
}

inline void caxpy_sub(cplx alpha, std::span<const double> xr, std::span<const double> xi,
                      std::span<double> yr, std::span<double> yi) {
  active().caxpy_sub(alpha.real(), alpha.imag(), xr.data(), xi.data(), yr.data(), yi.data(),
                     yr.size());
}

inline void cscale(cplx alpha, std::span<double> xr, std::span<double> xi) {
  active().cscale(alpha.real(), alpha.imag(), xr.data(), xi.data(), xr.size());
}

inline void accumulate_norm2(std::span<const double> xr, std::span<const double> xi,
                             std::span<double> acc) {
  active().accumulate_norm2(xr.data(), xi.data(), acc.data(), acc.size());
}

}  // namespace bergman::simd
