#include "bergman/geometry/signature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/simd/kernels.hpp"

namespace bergman::geometry {

CurvatureSignature signature_of(std::vector<double> eigenvalues, double tol) {
  if (!(tol > 0.0)) throw DomainError("signature tolerance must be positive");
  CurvatureSignature sig;
  std::sort(eigenvalues.begin(), eigenvalues.end());
  sig.eigenvalues = std::move(eigenvalues);
  sig.tol = tol;
  for (double l : sig.eigenvalues) {
    if (l < -tol) ++sig.index;
    if (std::abs(l) <= tol) sig.degenerate = true;
  }
  return sig;
}

CurvatureSignature curvature_signature(const ManifoldChart& chart, Point x,
                                       std::optional<double> tol) {
  if (static_cast<int>(x.size()) != chart.weight.dim()) {
    throw DomainError("point dimension does not match the chart");
  }
  if (tol && !(*tol > 0.0)) throw DomainError("signature tolerance must be positive");
  const HermitianMatrix hess = chart.weight.complex_hessian(x);
  const HermitianMatrix h = chart.metric.h(x);
  const numerics::GenEig eig = numerics::sym_geneig(hess, h);
  const double t = tol.value_or(1e-9 * std::max(1.0, hess.norm()));
  return signature_of({eig.values.data(), eig.values.data() + eig.values.size()}, t);
}

double morse_density(const CurvatureSignature& sig, int q) {
  if (sig.degenerate) {
    throw DegeneracyError("Morse density is undefined at a degenerate curvature point");
  }
  if (sig.index != q) return 0.0;
  double p = 1.0;
  for (double l : sig.eigenvalues) p *= std::abs(l) / std::numbers::pi;
  return p;
}

DensityIntegral integrate_density(const ManifoldChart& chart, int q,
                                  const numerics::QuadratureGrid& grid) {
  DensityIntegral out;
  out.nodes = grid.size();
  std::vector<double> samples(grid.size(), 0.0);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Point x = grid.point(p);
    const CurvatureSignature sig = curvature_signature(chart, x);
    if (sig.degenerate) {
      ++out.skipped;
      continue;
    }
    samples[p] = morse_density(sig, q) * chart.metric.volume_density(x);
  }
  if (out.skipped * 100 > out.nodes) {
    throw UnreliableIntegralError(std::to_string(out.skipped) + " of " +
                                  std::to_string(out.nodes) +
                                  " quadrature nodes have degenerate curvature");
  }
  out.value = grid.integrate(samples);
  return out;
}

std::vector<double> curvature_sign_changes(const ManifoldChart& chart, int samples) {
  if (chart.weight.dim() != 1) throw DomainError("sign changes are located for n = 1 charts");
  auto curvature = [&](double t) {
    const std::complex<double> z[1] = {std::sqrt(t / (1.0 - t))};
    const HermitianMatrix hess = chart.weight.complex_hessian(z);
    return hess(0, 0).real() / chart.metric.h(z)(0, 0).real();
  };
  std::vector<double> roots;
  double t0 = 0.5 / samples, f0 = curvature(t0);
  for (int i = 1; i < samples; ++i) {
    const double t1 = (i + 0.5) / samples, f1 = curvature(t1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double a = t0, b = t1, fa = f0;
      for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
        const double m = 0.5 * (a + b), fm = curvature(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    t0 = t1;
    f0 = f1;
  }
  return roots;
}

}  // namespace bergman::geometry
