#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bergman::numerics {

using cplx = std::complex<double>;

/// Dense conjugate-symmetric matrix. Writes through set() keep both
/// triangles consistent; from_dense() checks and symmetrizes.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::Index dim);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix from_dense(const Eigen::MatrixXcd& m, double rel_tol = 1e-10);
  static HermitianMatrix diagonal(const Eigen::VectorXd& d);

  Eigen::Index dim() const { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, cplx value);
  const Eigen::MatrixXcd& dense() const { return m_; }
  double trace() const;
  double norm() const;

  /// M^* A M for a square M of matching size.
  HermitianMatrix congruence(const Eigen::MatrixXcd& m) const;

 private:
  Eigen::MatrixXcd m_;
};

/// Lower-triangular L with L L^* = G. Pivots below 1e-12 * trace/dim raise
/// RankDeficiencyError naming the pivot.
Eigen::MatrixXcd cholesky_factor(const HermitianMatrix& g);

double cholesky_jitter_floor(const HermitianMatrix& g);

struct GenEig {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, G-orthonormal
};

/// Solves A v = nu G v for Hermitian A and positive definite G.
GenEig sym_geneig(const HermitianMatrix& a, const HermitianMatrix& g);

/// Solves L X = B in place for lower-triangular L.
void forward_substitute(const Eigen::MatrixXcd& l, Eigen::MatrixXcd& b);

}  // namespace bergman::numerics
