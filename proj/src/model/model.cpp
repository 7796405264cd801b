#include "bergman/model/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/numerics/moments.hpp"

namespace bergman::model {
namespace {

void check_q(const ModelWeight& w, int q) {
  if (q < 0 || q > w.n()) {
    throw DomainError("form degree q = " + std::to_string(q) + " outside [0, " +
                      std::to_string(w.n()) + "]");
  }
}

// Small fixed polydisc sample used to certify pointwise identities.
const numerics::QuadratureGrid& test_grid(int n) {
  static const numerics::QuadratureGrid grids[3] = {
      numerics::polydisc_quadrature(1, 4, 5, 1.5), numerics::polydisc_quadrature(2, 4, 5, 1.5),
      numerics::polydisc_quadrature(3, 4, 5, 1.5)};
  return grids[n - 1];
}

double gaussian_factor(std::span<const double> c, std::span<const cplx> z) {
  double e = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) e += c[i] * std::norm(z[i]);
  return std::exp(e);
}

}  // namespace

ModelWeight::ModelWeight(std::vector<double> lambda) : lambda_(std::move(lambda)) {
  if (lambda_.empty() || lambda_.size() > static_cast<std::size_t>(kMaxVars)) {
    throw CapacityError("model weights support 1 <= n <= 3");
  }
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (lambda_[i] == 0.0 || !std::isfinite(lambda_[i])) {
      throw DomainError("model weight lambda_" + std::to_string(i + 1) +
                        " must be finite and nonzero");
    }
  }
}

int ModelWeight::signature() const {
  return static_cast<int>(std::count_if(lambda_.begin(), lambda_.end(), [](double l) { return l < 0; }));
}

std::vector<double> ModelWeight::abs_lambda() const {
  std::vector<double> a(lambda_.size());
  std::transform(lambda_.begin(), lambda_.end(), a.begin(), [](double l) { return std::abs(l); });
  return a;
}

double ModelWeight::abs_det() const {
  double p = 1.0;
  for (double l : lambda_) p *= std::abs(l) / std::numbers::pi;
  return p;
}

double ModelWeight::phi(std::span<const cplx> z) const {
  double s = 0.0;
  for (std::size_t i = 0; i < lambda_.size(); ++i) s += lambda_[i] * std::norm(z[i]);
  return s;
}

Reindexing negatives_first(const ModelWeight& w) {
  Reindexing r;
  for (int i = 0; i < w.n(); ++i) {
    if (w[i] < 0) r.permutation.push_back(i);
  }
  for (int i = 0; i < w.n(); ++i) {
    if (w[i] > 0) r.permutation.push_back(i);
  }
  for (int i : r.permutation) r.lambda.push_back(w[i]);
  return r;
}

double model_kernel_origin(const ModelWeight& w, int q) {
  check_q(w, q);
  return w.signature() == q ? w.abs_det() : 0.0;
}

double model_extremal_origin(const ModelWeight& w, int q) {
  check_q(w, q);
  if (w.signature() != q) return 0.0;
  // The reduced space is a Fock space in |lambda|; the constant is extremal at 0.
  const std::vector<int> zero(w.n(), 0);
  const std::vector<double> abs = w.abs_lambda();
  return 1.0 / numerics::gaussian_moment(zero, abs);
}

ComponentExtremal model_component_extremal(const ModelWeight& w, int q, MultiIndex I) {
  check_q(w, q);
  if (I.size() != q) throw DomainError("multi-index " + I.to_string() + " does not have length q");
  ComponentExtremal out;
  out.reindexing = negatives_first(w);
  if (w.signature() == q && I == MultiIndex::first(q)) out.value = w.abs_det();
  return out;
}

double fock_kernel(const ModelWeight& w, int degree, std::span<const cplx> z) {
  if (degree < 0) throw DomainError("Fock truncation degree must be nonnegative");
  const int n = w.n();
  for (int i = 0; i < n; ++i) {
    if (!(w[i] > 0.0)) throw DomainError("fock_kernel needs every lambda_i > 0");
  }
  std::vector<double> log_u(n);
  for (int i = 0; i < n; ++i) {
    const double u = w[i] * std::norm(z[i]);
    log_u[i] = u > 0.0 ? std::log(u) : -HUGE_VAL;
  }
  auto factor = [&](int i, int a) {
    const double base = w[i] / std::numbers::pi;
    if (a == 0) return base;
    if (log_u[i] == -HUGE_VAL) return 0.0;
    return base * std::exp(a * log_u[i] - numerics::log_factorial(a));
  };
  double sum = 0.0;
  std::array<int, kMaxVars> a{};
  // Enumerate |a| <= degree in lexicographic order.
  const int top0 = degree;
  for (a[0] = 0; a[0] <= top0; ++a[0]) {
    const int top1 = n > 1 ? degree - a[0] : 0;
    for (a[1] = 0; a[1] <= top1; ++a[1]) {
      const int top2 = n > 2 ? degree - a[0] - a[1] : 0;
      for (a[2] = 0; a[2] <= top2; ++a[2]) {
        double t = 1.0;
        for (int i = 0; i < n; ++i) t *= factor(i, a[i]);
        sum += t;
      }
    }
  }
  return sum * std::exp(-w.phi(z));
}

Polynomial dbar_apply(int i, const Polynomial& p) { return p.dzbar(i); }

Polynomial dbar_adjoint_apply(const ModelWeight& w, int i, const Polynomial& p) {
  if (i < 0 || i >= w.n()) throw DomainError("axis out of range");
  Polynomial r = p.times_zbar(i) * cplx(w[i]);
  r -= p.dz(i);
  return r;
}

Polynomial laplacian_component(const ModelWeight& w, MultiIndex I, const Polynomial& f) {
  Polynomial r(f.n(), f.budget());
  for (int i = 0; i < w.n(); ++i) {
    if (I.contains(i)) {
      r += dbar_apply(i, dbar_adjoint_apply(w, i, f));
    } else {
      r += dbar_adjoint_apply(w, i, dbar_apply(i, f));
    }
  }
  return r;
}

MultiIndexForm model_laplacian_apply(const ModelWeight& w, const MultiIndexForm& alpha) {
  if (alpha.n() != w.n()) throw DomainError("form and weight dimensions differ");
  MultiIndexForm out(alpha.n(), alpha.q());
  for (const auto& [I, f] : alpha.components()) out.set(I, laplacian_component(w, I, f));
  return out;
}

Polynomial commutator_residual(const ModelWeight& w, int i, int j, const Polynomial& p) {
  Polynomial r = dbar_apply(i, dbar_adjoint_apply(w, j, p));
  r -= dbar_adjoint_apply(w, j, dbar_apply(i, p));
  if (i == j) r -= p * cplx(w[i]);
  return r;
}

cplx inner_product(const Polynomial& p, const Polynomial& q, std::span<const double> lambda) {
  if (p.n() != q.n() || static_cast<int>(lambda.size()) != p.n()) {
    throw DomainError("inner_product: dimensions differ");
  }
  const int n = p.n();
  cplx s = 0.0;
  std::vector<int> e(n);
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      bool match = true;
      for (int i = 0; i < n && match; ++i) {
        e[i] = mp.a[i] + mq.b[i];
        match = e[i] == mp.b[i] + mq.a[i];
      }
      if (!match) continue;
      s += cp * std::conj(cq) * numerics::gaussian_moment(e, lambda);
    }
  }
  return s;
}

cplx form_inner_product(const MultiIndexForm& a, const MultiIndexForm& b,
                        std::span<const double> lambda) {
  if (a.n() != b.n() || a.q() != b.q()) throw DomainError("forms are not comparable");
  cplx s = 0.0;
  for (const auto& [I, f] : a.components()) s += inner_product(f, b.component(I), lambda);
  return s;
}

Polynomial conjugated_dbar(int i, double mu, const Polynomial& p) {
  Polynomial r = p.dzbar(i);
  if (mu != 0.0) r += p.times_z(i) * cplx(mu);
  return r;
}

Polynomial conjugated_dbar_adjoint(int i, double lambda, double mu, const Polynomial& p) {
  Polynomial r = p.dz(i) * cplx(-1.0);
  if (lambda - mu != 0.0) r += p.times_zbar(i) * cplx(lambda - mu);
  return r;
}

ReducedForm harmonic_reduce(const ModelWeight& w, const GaussianForm& alpha) {
  if (alpha.n != w.n()) throw DomainError("form and weight dimensions differ");
  check_q(w, alpha.q);
  const int n = w.n();
  const numerics::QuadratureGrid& grid = test_grid(n);
  ReducedForm out;
  out.n = n;
  out.q = alpha.q;
  for (const auto& [I, coef] : alpha.components) {
    if (I.size() != alpha.q) throw DomainError("component " + I.to_string() + " has wrong length");
    if (static_cast<int>(coef.exponent.size()) != n) {
      throw DomainError("Gaussian exponent vector has the wrong length");
    }
    std::vector<double> mu(n, 0.0);
    for (int i = 0; i < n; ++i) {
      mu[i] = I.contains(i) ? w[i] : 0.0;
      if (std::abs(coef.exponent[i] - mu[i]) > 1e-12 * std::abs(w[i])) {
        throw DomainError("component " + I.to_string() +
                          " is outside the Gaussian-polynomial class for this weight");
      }
    }
    // First-order system: dbar_i^* f = 0 on I, dbar_i f = 0 off I.
    double scale = 1.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      scale = std::max(scale, std::abs(coef.eval(grid.point(p))));
    }
    for (int i = 0; i < n; ++i) {
      const Polynomial r = I.contains(i) ? conjugated_dbar_adjoint(i, w[i], mu[i], coef.p)
                                         : conjugated_dbar(i, mu[i], coef.p);
      double worst = 0.0;
      for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto z = grid.point(p);
        worst = std::max(worst, std::abs(r.eval(z)) * gaussian_factor(mu, z));
      }
      if (worst > 1e-10 * scale) {
        throw NotHarmonicError("component " + I.to_string() + " fails the first-order system on axis " +
                               std::to_string(i + 1) + " (residual " + std::to_string(worst) + ")");
      }
    }
    ReducedComponent rc{Polynomial(n, coef.p.budget()), std::vector<double>(n)};
    for (const auto& [m, c] : coef.p.terms()) {
      Monomial zeta;
      for (int i = 0; i < n; ++i) zeta.a[i] = I.contains(i) ? m.b[i] : m.a[i];
      rc.f.add(zeta, c);
    }
    for (int i = 0; i < n; ++i) rc.phi[i] = I.contains(i) ? -w[i] : w[i];
    // |f|^2 e^{-phi_0} = |F(zeta)|^2 e^{-Phi} pointwise.
    std::vector<cplx> zeta(n);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const auto z = grid.point(p);
      for (int i = 0; i < n; ++i) zeta[i] = I.contains(i) ? std::conj(z[i]) : z[i];
      const double lhs = std::norm(coef.eval(z)) * std::exp(-w.phi(z));
      double phi_red = 0.0;
      for (int i = 0; i < n; ++i) phi_red += rc.phi[i] * std::norm(z[i]);
      const double rhs = std::norm(rc.f.eval(zeta)) * std::exp(-phi_red);
      if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs))) {
        throw InvariantFailure("norm identity fails for component " + I.to_string());
      }
    }
    out.components.emplace(I, std::move(rc));
  }
  return out;
}

SubmeanValues submean_check(const Polynomial& f, const ModelWeight& w, double radius,
                            const numerics::QuadratureGrid& grid) {
  if (!(radius > 0.0)) throw DomainError("submean radius must be positive");
  for (int i = 0; i < w.n(); ++i) {
    if (!(w[i] > 0.0)) throw DomainError("submean_check needs every lambda_i > 0");
  }
  if (!f.is_holomorphic()) throw DomainError("submean_check needs a holomorphic polynomial");
  if (f.n() != w.n() || grid.dim != w.n()) throw DomainError("submean_check: dimensions differ");
  double grid_radius = -1.0;
  if (const auto* pd = std::get_if<numerics::PolydiscDomain>(&grid.domain)) {
    grid_radius = pd->radius;
  } else if (const auto* d = std::get_if<numerics::DiscDomain>(&grid.domain)) {
    grid_radius = d->radius;
  }
  if (std::abs(grid_radius - radius) > 1e-12 * radius) {
    throw DomainError("submean grid does not cover the polydisc of radius " + std::to_string(radius));
  }
  std::vector<double> mass(grid.size()), weighted(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto z = grid.point(p);
    const double e = std::exp(-w.phi(z));
    mass[p] = e;
    weighted[p] = std::norm(f.eval(z)) * e;
  }
  const std::vector<cplx> origin(w.n(), 0.0);
  return {std::norm(f.eval(origin)) * grid.integrate(mass), grid.integrate(weighted)};
}

}  // namespace bergman::model
