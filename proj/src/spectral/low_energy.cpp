#include "bergman/spectral/low_energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bergman/errors.hpp"

namespace bergman::spectral {

namespace {

double power(double base, int n) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= base;
  return p;
}

double radius_k(int k) { return std::log(double(k)) / std::sqrt(double(k)); }

double weighted_norm2(std::span<const double> rates, std::span<const cplx> z) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += rates[i] * std::norm(z[i]);
  return s;
}

double euclidean_norm(std::span<const cplx> z) {
  double s = 0.0;
  for (const cplx& c : z) s += std::norm(c);
  return std::sqrt(s);
}

numerics::QuadratureGrid support_grid(int n, double radius, const LowEnergyGrid& grid) {
  if (n > 2) throw DomainError("cutoff quadrature is available for n <= 2");
  const double breaks[1] = {0.5 * radius};
  return numerics::ball_quadrature(n, grid.radial_per_interval, grid.simplex, grid.angular,
                                   radius, breaks);
}

void check_capacity(const Beta& beta, int k, const CutoffFunction& chi, const LowEnergyGrid& grid) {
  double top = 0.0;
  for (double l : beta.weight.abs_lambda()) top = std::max(top, l);
  const double span = top * std::pow(chi.scale() * std::log(double(k)), 2);
  const int needed = static_cast<int>(std::ceil(span / 4.0)) + 8;
  if (grid.radial_per_interval < needed) {
    throw CapacityError("cutoff grid has " + std::to_string(grid.radial_per_interval) +
                        " radial nodes per interval, k = " + std::to_string(k) + " needs " +
                        std::to_string(needed));
  }
}

int sign_before(model::MultiIndex I, int j) {
  int count = 0;
  for (int i = 0; i < j; ++i) count += I.contains(i) ? 1 : 0;
  return count % 2 == 0 ? 1 : -1;
}

struct Piece {
  model::Polynomial p;
  std::vector<double> exponent;
};

model::Polynomial component_laplacian(const model::ModelWeight& w, model::MultiIndex I,
                                      const model::GaussianCoefficient& f) {
  model::Polynomial r(f.p.n(), f.p.budget());
  for (int j = 0; j < w.n(); ++j) {
    const double c = f.exponent[j];
    if (I.contains(j)) {
      r += model::conjugated_dbar(j, c, model::conjugated_dbar_adjoint(j, w[j], c, f.p));
    } else {
      r += model::conjugated_dbar_adjoint(j, w[j], c, model::conjugated_dbar(j, c, f.p));
    }
  }
  return r;
}

}  // namespace

cplx Beta::coefficient(std::span<const cplx> w) const {
  const auto it = form.components.find(model::MultiIndex::first(q));
  return it->second.eval(w);
}

double Beta::norm2(std::span<const cplx> w) const {
  const auto rates = weight.abs_lambda();
  return density * std::exp(-weighted_norm2(rates, w));
}

Beta build_beta(const model::ModelWeight& w, int q) {
  if (w.signature() != q) {
    throw DomainError("weight has " + std::to_string(w.signature()) +
                      " negative eigenvalues, beta needs exactly q = " + std::to_string(q));
  }
  Beta b;
  b.reindexing = model::negatives_first(w);
  b.weight = model::ModelWeight(b.reindexing.lambda);
  b.q = q;
  b.density = b.weight.abs_det();
  const int n = w.n();
  b.form.n = n;
  b.form.q = q;
  model::GaussianCoefficient c{model::Polynomial::constant(n, std::sqrt(b.density)),
                               std::vector<double>(n, 0.0)};
  for (int i = 0; i < q; ++i) c.exponent[i] = b.weight[i];
  b.form.components.emplace(model::MultiIndex::first(q), c);
  return b;
}

cplx alpha_k_coefficient(const Beta& beta, int k, const CutoffFunction& chi,
                         std::span<const cplx> z) {
  if (k < 3) throw DomainError("alpha_k needs k >= 3");
  const int n = beta.n();
  const double chi_k = chi(euclidean_norm(z) / radius_k(k));
  if (chi_k == 0.0) return 0.0;
  const double root = std::sqrt(double(k));
  std::vector<cplx> w(z.begin(), z.end());
  for (cplx& c : w) c *= root;
  return power(root, n) * chi_k * beta.coefficient(w);
}

double alpha_k_norm2(const Beta& beta, int k, const CutoffFunction& chi, std::span<const cplx> z) {
  if (k < 3) throw DomainError("alpha_k needs k >= 3");
  const double chi_k = chi(euclidean_norm(z) / radius_k(k));
  if (chi_k == 0.0) return 0.0;
  const auto rates = beta.weight.abs_lambda();
  return power(double(k), beta.n()) * chi_k * chi_k * beta.density *
         std::exp(-double(k) * weighted_norm2(rates, z));
}

numerics::QuadratureGrid alpha_grid(int n, int k, const CutoffFunction& chi,
                                    const LowEnergyGrid& grid) {
  if (k < 3) throw DomainError("alpha_k needs k >= 3");
  return support_grid(n, chi.scale() * radius_k(k), grid);
}

AlphaSamples build_alpha_k(const Beta& beta, int k, const CutoffFunction& chi,
                           const LowEnergyGrid& grid) {
  check_capacity(beta, k, chi, grid);
  AlphaSamples out;
  out.grid = alpha_grid(beta.n(), k, chi, grid);
  out.coefficients.reserve(out.grid.size());
  out.norm2.reserve(out.grid.size());
  for (std::size_t p = 0; p < out.grid.size(); ++p) {
    const auto z = out.grid.point(p);
    out.coefficients.push_back(alpha_k_coefficient(beta, k, chi, z));
    out.norm2.push_back(alpha_k_norm2(beta, k, chi, z));
  }
  return out;
}

LowEnergySequenceReport verify_low_energy_sequence(const model::ModelWeight& w,
                                                   std::span<const int> k_list,
                                                   const CutoffFunction& chi,
                                                   const LowEnergyGrid& grid) {
  if (k_list.size() < 3) throw DomainError("the sequence check needs at least three k");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 3) throw DomainError("alpha_k needs k >= 3");
    if (i > 0 && k_list[i] <= k_list[i - 1]) throw DomainError("k list must be increasing");
  }
  const int n = w.n();
  if (n > 2) throw DomainError("the sequence check is available for n <= 2");
  const Beta beta = build_beta(w, w.signature());
  const auto rates = beta.weight.abs_lambda();

  LowEnergySequenceReport rep;
  rep.lambda = w.lambda();
  rep.q = beta.q;
  for (int k : k_list) {
    const AlphaSamples samples = build_alpha_k(beta, k, chi, grid);
    const CutoffFunction chi_k(chi.scale() * radius_k(k));
    const double kn = power(double(k), n);
    LowEnergyRow row;
    row.k = k;
    const std::vector<cplx> origin(n, 0.0);
    row.peak = alpha_k_norm2(beta, k, chi, origin);
    row.peak_expected = kn * beta.density;
    double energy = 0.0, lap2 = 0.0, pairing = 0.0;
    for (std::size_t p = 0; p < samples.grid.size(); ++p) {
      const auto z = samples.grid.point(p);
      const double wt = samples.grid.weights[p];
      row.norm2 += wt * samples.norm2[p];
      const double s = euclidean_norm(z);
      const double d1 = chi_k.d1(s), d2 = chi_k.d2(s);
      if (d1 == 0.0 && d2 == 0.0) continue;
      const double gauss = kn * beta.density * std::exp(-double(k) * weighted_norm2(rates, z));
      const double bracket = -(0.25 * d2 + 0.25 * (2 * n - 1) * d1 / s) +
                             double(k) * weighted_norm2(rates, z) * d1 / (2.0 * s);
      energy += wt * gauss * 0.25 * d1 * d1;
      lap2 += wt * gauss * bracket * bracket;
      pairing += wt * gauss * chi_k(s) * bracket;
    }
    row.rayleigh = energy / k;
    row.laplacian_norm2 = lap2 / (double(k) * k);
    row.rayleigh_pairing = pairing / k;
    rep.rows.push_back(row);
  }
  double running = 0.0;
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
    running = std::max(running, it->rayleigh);
    it->delta = running;
    it->mu = std::sqrt(running);
    it->hypothesis_ratio = it->mu > 0.0 ? it->delta / it->mu : 0.0;
  }
  return rep;
}

PairingTerms gromov_pairing(const model::ModelWeight& w, const model::GaussianForm& beta,
                            double radius, const LowEnergyGrid& grid) {
  if (beta.n != w.n()) throw DomainError("form and weight dimensions differ");
  if (!(radius > 0.0)) throw DomainError("exhaustion radius must be positive");
  const int n = w.n();
  for (const auto& [I, f] : beta.components) {
    if (I.size() != beta.q) throw DomainError("component " + I.to_string() + " has wrong length");
    if (static_cast<int>(f.exponent.size()) != n) {
      throw DomainError("Gaussian exponent vector has the wrong length");
    }
    for (int i = 0; i < n; ++i) {
      if (!(w[i] - 2.0 * f.exponent[i] > 0.0)) {
        throw DomainError("form is not square integrable for this weight");
      }
    }
  }

  PairingTerms t;
  std::map<model::MultiIndex, std::vector<Piece>> targets;
  for (const auto& [I, f] : beta.components) {
    for (int j = 0; j < n; ++j) {
      const double c = f.exponent[j];
      const double sign = sign_before(I, j);
      if (I.contains(j)) {
        const auto target = model::MultiIndex::from_mask(I.mask() & ~(1u << j));
        targets[target].push_back(
            {model::conjugated_dbar_adjoint(j, w[j], c, f.p) * cplx(sign), f.exponent});
      } else {
        const auto target = model::MultiIndex::from_mask(I.mask() | (1u << j));
        targets[target].push_back({model::conjugated_dbar(j, c, f.p) * cplx(sign), f.exponent});
      }
    }
  }
  std::vector<double> rate(n);
  for (const auto& [target, pieces] : targets) {
    for (const Piece& a : pieces) {
      for (const Piece& b : pieces) {
        if (a.p.is_zero() || b.p.is_zero()) continue;
        for (int i = 0; i < n; ++i) rate[i] = w[i] - a.exponent[i] - b.exponent[i];
        t.energy += model::inner_product(a.p, b.p, rate).real();
      }
    }
  }

  std::vector<std::pair<model::GaussianCoefficient, model::GaussianCoefficient>> parts;
  for (const auto& [I, f] : beta.components) {
    model::GaussianCoefficient lap{component_laplacian(w, I, f), f.exponent};
    if (!lap.p.is_zero()) parts.emplace_back(lap, f);
  }
  if (!parts.empty()) {
    const numerics::QuadratureGrid g = support_grid(n, radius, grid);
    const CutoffFunction chi(radius);
    for (std::size_t p = 0; p < g.size(); ++p) {
      const auto z = g.point(p);
      const double c = chi(euclidean_norm(z));
      if (c == 0.0) continue;
      cplx sum = 0.0;
      for (const auto& [lap, f] : parts) {
        sum += lap.p.eval(z) * std::conj(f.p.eval(z)) *
               std::exp(-weighted_norm2(w.lambda(), z) +
                        2.0 * weighted_norm2(f.exponent, z));
      }
      t.pairing += g.weights[p] * c * c * sum;
    }
  }
  t.residual = std::abs(t.pairing - t.energy);
  return t;
}

double gromov_pairing_residual(const model::ModelWeight& w, const model::GaussianForm& beta,
                               double radius, const LowEnergyGrid& grid) {
  return gromov_pairing(w, beta, radius, grid).residual;
}

}  // namespace bergman::spectral
