#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bergman/model/forms.hpp"
#include "bergman/model/model.hpp"
#include "bergman/numerics/linalg.hpp"

namespace bergman::spectral {

using cplx = std::complex<double>;
using numerics::HermitianMatrix;

/// Trial function for the coefficient of dzbar^I:
/// prod_j h_{a_j b_j}(z_j) times exp(sum over negative lambda_j of lambda_j |z_j|^2),
/// where h_{ab} is the complex Hermite polynomial orthonormal for e^{-|lambda_j| |z|^2}.
struct BasisFunction {
  int component = 0;
  std::array<int, model::kMaxVars> a{};
  std::array<int, model::kMaxVars> b{};
};

/// Trial functions of one component sharing the charge a_j - b_j in every
/// variable. Different blocks are orthogonal and Delta preserves each block.
struct SpectralBlock {
  int component = 0;
  std::array<int, model::kMaxVars> charge{};
  std::vector<std::size_t> members;
  HermitianMatrix gram;
  HermitianMatrix stiffness;
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // gram-orthonormal columns
};

/// Galerkin discretisation of the model Laplacian on (0,q)-forms, trial
/// functions of total degree at most D.
class SpectralSlice {
 public:
  const model::ModelWeight& weight() const { return weight_; }
  int q() const { return q_; }
  int degree() const { return degree_; }
  const std::vector<model::MultiIndex>& components() const { return components_; }
  const std::vector<BasisFunction>& basis() const { return basis_; }
  const std::vector<SpectralBlock>& blocks() const { return blocks_; }

  /// All eigenvalues in ascending order.
  std::vector<double> eigenvalues() const;
  /// Exponent mu_j of the Gaussian factor exp(mu_j |z_j|^2) carried by every trial function.
  const std::vector<double>& conjugation() const { return conjugation_; }
  /// The trial functions are orthogonal for exp(-sum rates_j |z_j|^2).
  const std::vector<double>& rates() const { return rates_; }

  /// Polynomial part of trial function i.
  model::Polynomial basis_polynomial(std::size_t i) const;
  /// Polynomial part of every trial function at z.
  std::vector<cplx> basis_values(std::span<const cplx> z) const;

  /// Block-diagonal matrices over the full basis, for inspection.
  Eigen::MatrixXcd dense_gram() const;
  Eigen::MatrixXcd dense_stiffness() const;

 private:
  friend SpectralSlice galerkin_assemble(const model::ModelWeight&, int, int);
  explicit SpectralSlice(model::ModelWeight w) : weight_(std::move(w)) {}
  model::ModelWeight weight_;
  int q_ = 0, degree_ = 0;
  std::vector<model::MultiIndex> components_;
  std::vector<BasisFunction> basis_;
  std::vector<SpectralBlock> blocks_;
  std::vector<double> conjugation_, rates_;
};

/// Hermite polynomial h_{ab} in one variable, orthonormal for exp(-rate |z|^2).
model::Polynomial hermite_polynomial(int a, int b, double rate);

/// Assembles and diagonalises every block. D >= 2, n <= 3.
SpectralSlice galerkin_assemble(const model::ModelWeight& w, int q, int degree);

/// Sum over eigenforms with eigenvalue <= nu of their pointwise norm at z.
double low_energy_bergman(const SpectralSlice& slice, double nu, std::span<const cplx> z);

}  // namespace bergman::spectral
