#include "bergman/numerics/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "bergman/errors.hpp"

namespace bergman::numerics {

HermitianMatrix::HermitianMatrix(Eigen::Index dim) : m_(Eigen::MatrixXcd::Zero(dim, dim)) {}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  HermitianMatrix h(dim);
  h.m_.setIdentity();
  return h;
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& d) {
  HermitianMatrix h(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) h.m_(i, i) = d[i];
  return h;
}

HermitianMatrix HermitianMatrix::from_dense(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DomainError("Hermitian matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > rel_tol * scale) {
    throw DomainError("matrix is not conjugate-symmetric (skew " + std::to_string(skew) + ")");
  }
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

void HermitianMatrix::set(Eigen::Index i, Eigen::Index j, cplx value) {
  if (i == j) {
    m_(i, i) = value.real();
  } else {
    m_(i, j) = value;
    m_(j, i) = std::conj(value);
  }
}

double HermitianMatrix::trace() const { return m_.diagonal().real().sum(); }

double HermitianMatrix::norm() const { return m_.norm(); }

HermitianMatrix HermitianMatrix::congruence(const Eigen::MatrixXcd& m) const {
  HermitianMatrix h;
  const Eigen::MatrixXcd c = m.adjoint() * m_ * m;
  h.m_ = 0.5 * (c + c.adjoint());
  return h;
}

double cholesky_jitter_floor(const HermitianMatrix& g) {
  return g.dim() == 0 ? 0.0 : 1e-12 * g.trace() / static_cast<double>(g.dim());
}

Eigen::MatrixXcd cholesky_factor(const HermitianMatrix& g) {
  const Eigen::Index n = g.dim();
  const double floor = cholesky_jitter_floor(g);
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = g(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > floor)) throw RankDeficiencyError(static_cast<std::size_t>(j), d, floor);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      cplx s = g(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

void forward_substitute(const Eigen::MatrixXcd& l, Eigen::MatrixXcd& b) {
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    for (Eigen::Index k = 0; k < i; ++k) b.row(i) -= l(i, k) * b.row(k);
    b.row(i) /= l(i, i);
  }
}

GenEig sym_geneig(const HermitianMatrix& a, const HermitianMatrix& g) {
  if (a.dim() != g.dim()) throw DomainError("sym_geneig: matrix dimensions differ");
  const Eigen::MatrixXcd l = cholesky_factor(g);
  // C = L^{-1} A L^{-*}
  Eigen::MatrixXcd x = a.dense();
  forward_substitute(l, x);
  Eigen::MatrixXcd y = x.adjoint();
  forward_substitute(l, y);
  const Eigen::MatrixXcd c = 0.5 * (y + y.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
  if (es.info() != Eigen::Success) throw DegeneracyError("Hermitian eigensolver did not converge");
  GenEig out;
  out.values = es.eigenvalues();
  out.vectors = l.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors());
  return out;
}

}  // namespace bergman::numerics
