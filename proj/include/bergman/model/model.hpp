#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bergman/model/forms.hpp"
#include "bergman/numerics/quadrature.hpp"

namespace bergman::model {

/// phi_0(z) = sum lambda_i |z_i|^2 with every lambda_i nonzero, n <= 3.
class ModelWeight {
 public:
  explicit ModelWeight(std::vector<double> lambda);
  int n() const { return static_cast<int>(lambda_.size()); }
  const std::vector<double>& lambda() const { return lambda_; }
  double operator[](int i) const { return lambda_[i]; }
  int signature() const;  // number of negative lambda_i
  std::vector<double> abs_lambda() const;
  double abs_det() const;
  double phi(std::span<const cplx> z) const;

 private:
  std::vector<double> lambda_;
};

/// Explicit reordering putting the negative lambda_i first (stable in each group).
struct Reindexing {
  std::vector<int> permutation;  // new position -> original 0-based axis
  std::vector<double> lambda;    // lambda in the new order
};
Reindexing negatives_first(const ModelWeight& w);

double model_kernel_origin(const ModelWeight& w, int q);
double model_extremal_origin(const ModelWeight& w, int q);

struct ComponentExtremal {
  double value = 0.0;
  Reindexing reindexing;
};
/// I is read in the negatives-first labelling returned alongside the value.
ComponentExtremal model_component_extremal(const ModelWeight& w, int q, MultiIndex I);

/// Degree-D truncation of the Fock-space kernel, evaluated in log space.
double fock_kernel(const ModelWeight& w, int degree, std::span<const cplx> z);

Polynomial dbar_apply(int i, const Polynomial& p);
/// (-d/dz_i + lambda_i zbar_i) p
Polynomial dbar_adjoint_apply(const ModelWeight& w, int i, const Polynomial& p);

Polynomial laplacian_component(const ModelWeight& w, MultiIndex I, const Polynomial& f);
MultiIndexForm model_laplacian_apply(const ModelWeight& w, const MultiIndexForm& alpha);

/// (dbar_i dbar_j^* - dbar_j^* dbar_i) p - delta_ij lambda_i p
Polynomial commutator_residual(const ModelWeight& w, int i, int j, const Polynomial& p);

/// Integral of p conj(q) exp(-sum lambda_i |z_i|^2) from exact moments; all lambda_i > 0.
cplx inner_product(const Polynomial& p, const Polynomial& q, std::span<const double> lambda);
cplx form_inner_product(const MultiIndexForm& a, const MultiIndexForm& b,
                        std::span<const double> lambda);

/// D_i p = dp/dzbar_i + mu_i z_i p and D_i^* p = -dp/dz_i + (lambda_i - mu_i) zbar_i p:
/// dbar_i and dbar_i^* conjugated through the factor exp(sum mu_i |z_i|^2).
Polynomial conjugated_dbar(int i, double mu, const Polynomial& p);
Polynomial conjugated_dbar_adjoint(int i, double lambda, double mu, const Polynomial& p);

/// Reduction of a harmonic form of the Gaussian-polynomial class to holomorphic
/// data. Throws NotHarmonicError when the first-order system fails.
ReducedForm harmonic_reduce(const ModelWeight& w, const GaussianForm& alpha);

struct SubmeanValues {
  double lhs = 0.0;
  double rhs = 0.0;
};
/// Both sides of the sub-mean inequality on the polydisc carried by `grid`.
SubmeanValues submean_check(const Polynomial& f, const ModelWeight& w, double radius,
                            const numerics::QuadratureGrid& grid);

}  // namespace bergman::model
