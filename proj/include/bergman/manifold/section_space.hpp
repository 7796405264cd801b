#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bergman/geometry/weight.hpp"
#include "bergman/numerics/linalg.hpp"
#include "bergman/numerics/quadrature.hpp"

namespace bergman::manifold {

using cplx = std::complex<double>;
using geometry::ManifoldChart;
using numerics::HermitianMatrix;
using numerics::QuadratureGrid;

/// A point of the projective line: the affine coordinate z, or w = 1/z in the
/// chart at infinity.
struct ChartPoint {
  bool far = false;
  cplx coord = 0.0;

  /// Uses the far chart when |z| > 1.
  static ChartPoint from_affine(cplx z);
  static ChartPoint infinity() { return {true, 0.0}; }
  /// Affine coordinate; infinite for the point at infinity.
  cplx affine() const;
};

/// Sample points at |z| in {0, 0.3, 0.7, 1.2, 2.5} on the positive real axis
/// followed by their images under z -> 1/z.
std::vector<ChartPoint> default_sample_points();

/// Grid used for a space of tensor power k: 2|kd| + 16 angular and
/// 2|kd| + 32 radial nodes.
QuadratureGrid default_grid(const ManifoldChart& chart, int k);

struct SpaceOptions {
  /// Optional invertible matrix R; the basis becomes b'_i = sum_j R_ij b_j.
  std::optional<Eigen::MatrixXcd> recombination;
};

/// Finite-dimensional space of holomorphic sections with its Gram matrix.
/// For q = 0 this is H^0(L^k); for q = 1 it is H^0(K (x) L^{-k}), which stands
/// in for harmonic (0,1)-forms with values in L^k.
class SectionSpace {
 public:
  const ManifoldChart& chart() const { return chart_; }
  int k() const { return k_; }
  int q() const { return q_; }
  int dimension() const { return static_cast<int>(exponents_.size()); }
  int top_degree() const { return top_; }
  /// Monomial degrees in the affine chart.
  const std::vector<int>& exponents() const { return exponents_; }
  /// Gram matrix of the basis after each vector is rescaled to unit norm.
  const HermitianMatrix& gram() const { return gram_; }
  /// Factor applied to each basis vector so that the Gram diagonal is one.
  const Eigen::VectorXd& basis_scale() const { return scale_; }
  const Eigen::MatrixXcd& cholesky() const { return chol_; }
  /// L^{-*}: its columns are the coefficients of an orthonormal basis.
  Eigen::MatrixXcd orthonormalizer() const;
  const QuadratureGrid& grid() const { return grid_; }

  /// Effective potential: k phi for q = 0, -k phi + log h for q = 1.
  double effective_weight(const ChartPoint& x) const;
  /// Basis values multiplied by exp(-effective_weight / 2).
  Eigen::VectorXcd normalized_values(const ChartPoint& x) const;

 private:
  friend SectionSpace build_space(const ManifoldChart&, int, int, const QuadratureGrid&,
                                  const SpaceOptions&);
  ManifoldChart chart_;
  int k_ = 0, q_ = 0, top_ = -1;
  std::vector<int> exponents_;
  std::vector<double> log_binomial_;
  std::optional<Eigen::MatrixXcd> recombination_;
  Eigen::VectorXd scale_;
  HermitianMatrix gram_;
  Eigen::MatrixXcd chol_;
  QuadratureGrid grid_;
};

SectionSpace build_space(const ManifoldChart& chart, int k, int q, const QuadratureGrid& grid,
                         const SpaceOptions& options = {});
SectionSpace build_section_space(const ManifoldChart& chart, int k, const QuadratureGrid& grid,
                                 const SpaceOptions& options = {});
SectionSpace build_dual_space(const ManifoldChart& chart, int k, const QuadratureGrid& grid,
                              const SpaceOptions& options = {});

/// Expected dimension: kd + 1 for q = 0, max(0, -kd - 1) for q = 1.
int expected_dimension(int degree, int k, int q);

double bergman_at(const SectionSpace& space, const ChartPoint& x);

struct ExtremalValue {
  double s = 0.0;
  std::vector<double> components;
};
ExtremalValue extremal_at(const SectionSpace& space, const ChartPoint& x);

struct SandwichMargins {
  double b = 0.0, s = 0.0, component_sum = 0.0;
  double lower = 0.0;  // B - S
  double upper = 0.0;  // sum_I S_I - B
};
/// S <= B <= sum_I S_I up to 1e-9; violations raise InvariantFailure.
SandwichMargins sandwich_check(const SectionSpace& space, const ChartPoint& x);

/// Bergman function at every node of `grid`, through the vectorised
/// triangular solve.
std::vector<double> bergman_on_grid(const SectionSpace& space, const QuadratureGrid& grid);

/// Integral of B against the volume form on an independent grid.
double bergman_integral(const SectionSpace& space, const QuadratureGrid& grid);

}  // namespace bergman::manifold
