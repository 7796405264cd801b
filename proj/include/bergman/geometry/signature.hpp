#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bergman/geometry/weight.hpp"
#include "bergman/numerics/quadrature.hpp"

namespace bergman::geometry {

struct CurvatureSignature {
  std::vector<double> eigenvalues;  // ascending
  int index = 0;                    // count of eigenvalues below -tol
  bool degenerate = false;          // some |lambda_i| <= tol
  double tol = 0.0;
};

/// Eigenvalues of phi_{z zbar}(x) relative to h(x). Without an explicit
/// tolerance, 1e-9 * max(1, |Hessian|) is used.
CurvatureSignature curvature_signature(const ManifoldChart& chart, Point x,
                                       std::optional<double> tol = std::nullopt);

/// Same classification applied to a list of eigenvalues directly.
CurvatureSignature signature_of(std::vector<double> eigenvalues, double tol = 1e-12);

/// (1/pi^n) prod |lambda_i| when the index equals q, else 0.
double morse_density(const CurvatureSignature& sig, int q);

struct DensityIntegral {
  double value = 0.0;
  std::size_t skipped = 0;
  std::size_t nodes = 0;
};

/// Quadrature of morse_density over X(q) with respect to the volume of omega.
/// Degenerate nodes are skipped; more than 1% of them raises UnreliableIntegralError.
DensityIntegral integrate_density(const ManifoldChart& chart, int q,
                                  const numerics::QuadratureGrid& grid);

/// Values of t = |z|^2/(1+|z|^2) in (0, 1) where the curvature of a radial
/// projective-line chart changes sign, located by sampling and bisection
/// along the positive real axis.
std::vector<double> curvature_sign_changes(const ManifoldChart& chart, int samples = 512);

}  // namespace bergman::geometry
