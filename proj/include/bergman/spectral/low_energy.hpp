#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bergman/model/forms.hpp"
#include "bergman/model/model.hpp"
#include "bergman/numerics/quadrature.hpp"
#include "bergman/spectral/cutoff.hpp"

namespace bergman::spectral {

using cplx = std::complex<double>;

/// Unit-norm harmonic ground state c exp(sum_{i <= q} lambda_i |w_i|^2) dwbar_1 ^ ... ^ dwbar_q
/// for a weight with exactly q negative eigenvalues, written in the
/// negatives-first coordinates.
struct Beta {
  model::ModelWeight weight{std::vector<double>{1.0}};  // reindexed
  model::Reindexing reindexing;
  int q = 0;
  double density = 0.0;  // c^2 = prod |lambda_i| / pi^n
  model::GaussianForm form;

  int n() const { return weight.n(); }
  /// Coefficient of dwbar_1 ^ ... ^ dwbar_q at w.
  cplx coefficient(std::span<const cplx> w) const;
  /// |beta(w)|^2 in the metric exp(-phi_0).
  double norm2(std::span<const cplx> w) const;
};

Beta build_beta(const model::ModelWeight& w, int q);

/// alpha_k(z) = k^{n/2} chi(|z| / R_k) beta(sqrt(k) z) with R_k = ln k / sqrt(k)
/// and chi the cutoff profile scaled by `chi.scale()`.
cplx alpha_k_coefficient(const Beta& beta, int k, const CutoffFunction& chi, std::span<const cplx> z);
/// |alpha_k(z)|^2 in the metric exp(-k phi_0).
double alpha_k_norm2(const Beta& beta, int k, const CutoffFunction& chi, std::span<const cplx> z);

struct LowEnergyGrid {
  int radial_per_interval = 64;
  int angular = 32;
  int simplex = 24;
};

/// Grid on the support |z| <= scale R_k, split where the cutoff starts to fall.
numerics::QuadratureGrid alpha_grid(int n, int k, const CutoffFunction& chi,
                                    const LowEnergyGrid& grid);

struct AlphaSamples {
  numerics::QuadratureGrid grid;
  std::vector<cplx> coefficients;
  std::vector<double> norm2;
};
AlphaSamples build_alpha_k(const Beta& beta, int k, const CutoffFunction& chi,
                           const LowEnergyGrid& grid = {});

struct LowEnergyRow {
  int k = 0;
  double peak = 0.0;             // |alpha_k(0)|^2
  double peak_expected = 0.0;    // k^n prod |lambda_i| / pi^n
  double norm2 = 0.0;            // ||alpha_k||^2
  double laplacian_norm2 = 0.0;  // ||k^{-1} Delta alpha_k||^2
  double rayleigh = 0.0;         // ||k^{-1/2} (dbar + dbar^*) alpha_k||^2
  double rayleigh_pairing = 0.0; // <k^{-1} Delta alpha_k, alpha_k>
  double delta = 0.0;            // max of rayleigh over this and later k
  double mu = 0.0;               // sqrt(delta)
  double hypothesis_ratio = 0.0; // delta / mu
};

struct LowEnergySequenceReport {
  std::vector<double> lambda;
  int q = 0;
  std::vector<LowEnergyRow> rows;
};

/// Requires at least three increasing k >= 3 and n <= 2.
LowEnergySequenceReport verify_low_energy_sequence(const model::ModelWeight& w,
                                                   std::span<const int> k_list,
                                                   const CutoffFunction& chi = CutoffFunction(),
                                                   const LowEnergyGrid& grid = {});

struct PairingTerms {
  cplx pairing = 0.0;   // <Delta beta, chi_R beta>
  double energy = 0.0;  // ||(dbar + dbar^*) beta||^2
  double residual = 0.0;
};

/// Compares <Delta beta, chi(|z|/R)^2 beta> with ||(dbar + dbar^*) beta||^2 for a
/// form with polynomial-Gaussian coefficients of finite norm. n <= 2.
PairingTerms gromov_pairing(const model::ModelWeight& w, const model::GaussianForm& beta,
                            double radius, const LowEnergyGrid& grid = {});
double gromov_pairing_residual(const model::ModelWeight& w, const model::GaussianForm& beta,
                               double radius, const LowEnergyGrid& grid = {});

}  // namespace bergman::spectral
