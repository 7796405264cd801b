#include "bergman/spectral/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/numerics/moments.hpp"

namespace bergman::spectral {

namespace {

constexpr int kMaxDegree = 32;
constexpr std::size_t kMaxBasis = 300000;

using Charge = std::array<int, model::kMaxVars>;

/// Position of (a, b) among pairs with a + b <= D, ordered by total degree.
int pair_index(int a, int b) {
  const int t = a + b;
  return t * (t + 1) / 2 + b;
}

/// One-variable tables for a single axis: Gram matrix and the two energy
/// forms |dbar u|^2 (axis not in I) and |dbar^* u|^2 (axis in I).
struct AxisTables {
  int size = 0;
  std::vector<model::Polynomial> hermite;
  std::vector<cplx> gram, energy_out, energy_in;
  cplx at(const std::vector<cplx>& t, int u, int v) const { return t[std::size_t(u) * size + v]; }
};

AxisTables axis_tables(double lambda, double mu, int degree) {
  AxisTables t;
  t.size = (degree + 1) * (degree + 2) / 2;
  const double rate = std::abs(lambda);
  const double rates[1] = {rate};
  std::vector<int> charge(t.size);
  t.hermite.assign(t.size, model::Polynomial(1, degree + 2));
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      t.hermite[pair_index(a, b)] = hermite_polynomial(a, b, rate);
      charge[pair_index(a, b)] = a - b;
    }
  }
  std::vector<model::Polynomial> out, in;
  for (const auto& h : t.hermite) {
    out.push_back(model::conjugated_dbar(0, mu, h));
    in.push_back(model::conjugated_dbar_adjoint(0, lambda, mu, h));
  }
  const std::size_t cells = std::size_t(t.size) * t.size;
  t.gram.assign(cells, 0.0);
  t.energy_out.assign(cells, 0.0);
  t.energy_in.assign(cells, 0.0);
  for (int u = 0; u < t.size; ++u) {
    for (int v = 0; v < t.size; ++v) {
      if (charge[u] != charge[v]) continue;
      const std::size_t c = std::size_t(u) * t.size + v;
      t.gram[c] = model::inner_product(t.hermite[u], t.hermite[v], rates);
      t.energy_out[c] = model::inner_product(out[u], out[v], rates);
      t.energy_in[c] = model::inner_product(in[u], in[v], rates);
    }
  }
  return t;
}

void enumerate(int n, int degree, int axis, BasisFunction& f, std::vector<BasisFunction>& out) {
  if (axis == n) {
    out.push_back(f);
    return;
  }
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      f.a[axis] = a;
      f.b[axis] = b;
      enumerate(n, degree - a - b, axis + 1, f, out);
    }
  }
  f.a[axis] = f.b[axis] = 0;
}

std::size_t count_trial_functions(int n, int degree) {
  // Monomials of degree <= D in 2n variables.
  double c = 1.0;
  for (int i = 1; i <= 2 * n; ++i) c = c * (degree + i) / i;
  return static_cast<std::size_t>(std::llround(c));
}

void solve_block(SpectralBlock& block) {
  const numerics::GenEig eig = numerics::sym_geneig(block.stiffness, block.gram);
  block.values = eig.values;
  block.vectors = eig.vectors;
  const double scale = std::max(1.0, block.values.cwiseAbs().maxCoeff());
  if (block.values.size() > 0 && block.values[0] < -1e-10 * scale) {
    throw InvariantFailure("Galerkin eigenvalue " + std::to_string(block.values[0]) +
                           " is negative");
  }
}

}  // namespace

model::Polynomial hermite_polynomial(int a, int b, double rate) {
  if (a < 0 || b < 0) throw DomainError("Hermite indices must be nonnegative");
  if (!(rate > 0.0)) throw DomainError("Hermite rate must be positive");
  const double log_norm2 = std::log(std::numbers::pi) + numerics::log_factorial(a) +
                           numerics::log_factorial(b) - (a + b + 1) * std::log(rate);
  model::Polynomial h(1, std::max(a + b + 2, model::kDefaultBudget));
  for (int k = 0; k <= std::min(a, b); ++k) {
    const double log_c = numerics::log_factorial(a) + numerics::log_factorial(b) -
                         numerics::log_factorial(a - k) - numerics::log_factorial(b - k) -
                         numerics::log_factorial(k) - k * std::log(rate) - 0.5 * log_norm2;
    model::Monomial m;
    m.a[0] = a - k;
    m.b[0] = b - k;
    h.add(m, (k % 2 == 0 ? 1.0 : -1.0) * std::exp(log_c));
  }
  return h;
}

std::vector<double> SpectralSlice::eigenvalues() const {
  std::vector<double> all;
  all.reserve(basis_.size());
  for (const auto& b : blocks_) all.insert(all.end(), b.values.begin(), b.values.end());
  std::sort(all.begin(), all.end());
  return all;
}

model::Polynomial SpectralSlice::basis_polynomial(std::size_t i) const {
  const BasisFunction& f = basis_.at(i);
  const int n = weight_.n();
  model::Polynomial p = model::Polynomial::constant(n, 1.0, 2 * degree_ + 4);
  for (int j = 0; j < n; ++j) {
    const model::Polynomial h = hermite_polynomial(f.a[j], f.b[j], rates_[j]);
    model::Polynomial lifted(n, 2 * degree_ + 4);
    for (const auto& [m, c] : h.terms()) {
      model::Monomial mm;
      mm.a[j] = m.a[0];
      mm.b[j] = m.b[0];
      lifted.add(mm, c);
    }
    p = p * lifted;
  }
  return p;
}

std::vector<cplx> SpectralSlice::basis_values(std::span<const cplx> z) const {
  const int n = weight_.n();
  if (static_cast<int>(z.size()) != n) throw DomainError("point has the wrong dimension");
  std::vector<std::vector<cplx>> axis(n);
  for (int j = 0; j < n; ++j) {
    const cplx zj[1] = {z[j]};
    axis[j].resize((degree_ + 1) * (degree_ + 2) / 2);
    for (int a = 0; a <= degree_; ++a) {
      for (int b = 0; a + b <= degree_; ++b) {
        axis[j][pair_index(a, b)] = hermite_polynomial(a, b, rates_[j]).eval(zj);
      }
    }
  }
  std::vector<cplx> v(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    cplx p = 1.0;
    for (int j = 0; j < n; ++j) p *= axis[j][pair_index(basis_[i].a[j], basis_[i].b[j])];
    v[i] = p;
  }
  return v;
}

Eigen::MatrixXcd SpectralSlice::dense_gram() const {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(basis_.size(), basis_.size());
  for (const auto& blk : blocks_) {
    const Eigen::MatrixXcd d = blk.gram.dense();
    for (std::size_t r = 0; r < blk.members.size(); ++r) {
      for (std::size_t c = 0; c < blk.members.size(); ++c) g(blk.members[r], blk.members[c]) = d(r, c);
    }
  }
  return g;
}

Eigen::MatrixXcd SpectralSlice::dense_stiffness() const {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(basis_.size(), basis_.size());
  for (const auto& blk : blocks_) {
    const Eigen::MatrixXcd d = blk.stiffness.dense();
    for (std::size_t r = 0; r < blk.members.size(); ++r) {
      for (std::size_t c = 0; c < blk.members.size(); ++c) s(blk.members[r], blk.members[c]) = d(r, c);
    }
  }
  return s;
}

SpectralSlice galerkin_assemble(const model::ModelWeight& w, int q, int degree) {
  const int n = w.n();
  if (q < 0 || q > n) throw DomainError("form degree q must lie in [0, n]");
  if (degree < 2) throw DomainError("Galerkin degree must be at least 2");
  if (degree > kMaxDegree) {
    throw CapacityError("Galerkin degree " + std::to_string(degree) + " exceeds the budget " +
                        std::to_string(kMaxDegree));
  }
  const auto components = model::multi_indices(n, q);
  const std::size_t total = components.size() * count_trial_functions(n, degree);
  if (total > kMaxBasis) {
    throw CapacityError("Galerkin basis of " + std::to_string(total) + " functions exceeds " +
                        std::to_string(kMaxBasis));
  }

  SpectralSlice s(w);
  s.q_ = q;
  s.degree_ = degree;
  s.components_ = components;
  std::vector<AxisTables> tables;
  for (int j = 0; j < n; ++j) {
    s.conjugation_.push_back(w[j] < 0.0 ? w[j] : 0.0);
    s.rates_.push_back(std::abs(w[j]));
    tables.push_back(axis_tables(w[j], s.conjugation_[j], degree));
  }

  std::vector<BasisFunction> shapes;
  BasisFunction scratch;
  enumerate(n, degree, 0, scratch, shapes);
  std::map<std::pair<int, Charge>, std::vector<std::size_t>> groups;
  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    for (BasisFunction f : shapes) {
      f.component = c;
      Charge charge{};
      for (int j = 0; j < n; ++j) charge[j] = f.a[j] - f.b[j];
      groups[{c, charge}].push_back(s.basis_.size());
      s.basis_.push_back(f);
    }
  }

  for (const auto& [key, members] : groups) {
    SpectralBlock blk;
    blk.component = key.first;
    blk.charge = key.second;
    blk.members = members;
    const model::MultiIndex I = components[key.first];
    const int m = static_cast<int>(members.size());
    blk.gram = HermitianMatrix(m);
    blk.stiffness = HermitianMatrix(m);
    for (int r = 0; r < m; ++r) {
      const BasisFunction& fr = s.basis_[members[r]];
      for (int c = 0; c <= r; ++c) {
        const BasisFunction& fc = s.basis_[members[c]];
        std::array<cplx, model::kMaxVars> g{}, e{};
        for (int j = 0; j < n; ++j) {
          const int u = pair_index(fr.a[j], fr.b[j]), v = pair_index(fc.a[j], fc.b[j]);
          g[j] = tables[j].at(tables[j].gram, u, v);
          e[j] = tables[j].at(I.contains(j) ? tables[j].energy_in : tables[j].energy_out, u, v);
        }
        cplx gram = 1.0, stiff = 0.0;
        for (int j = 0; j < n; ++j) {
          gram *= g[j];
          cplx term = e[j];
          for (int i = 0; i < n; ++i) {
            if (i != j) term *= g[i];
          }
          stiff += term;
        }
        blk.gram.set(r, c, gram);
        blk.stiffness.set(r, c, stiff);
      }
    }
    solve_block(blk);
    s.blocks_.push_back(std::move(blk));
  }
  return s;
}

double low_energy_bergman(const SpectralSlice& slice, double nu, std::span<const cplx> z) {
  if (!(nu >= 0.0)) throw DomainError("energy cutoff must be nonnegative");
  const std::vector<cplx> values = slice.basis_values(z);
  double sum = 0.0;
  for (const auto& blk : slice.blocks()) {
    for (Eigen::Index e = 0; e < blk.values.size() && blk.values[e] <= nu; ++e) {
      cplx v = 0.0;
      for (std::size_t r = 0; r < blk.members.size(); ++r) {
        v += blk.vectors(static_cast<Eigen::Index>(r), e) * values[blk.members[r]];
      }
      sum += std::norm(v);
    }
  }
  double decay = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) decay += slice.rates()[j] * std::norm(z[j]);
  return sum * std::exp(-decay);
}

}  // namespace bergman::spectral
