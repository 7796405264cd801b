#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "bergman/errors.hpp"
#include "bergman/model/model.hpp"
#include "bergman/numerics/linalg.hpp"
#include "bergman/numerics/quadrature.hpp"

using namespace bergman;
using namespace bergman::model;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

Monomial mono(std::initializer_list<int> a, std::initializer_list<int> b) {
  Monomial m;
  int i = 0;
  for (int x : a) m.a[i++] = x;
  i = 0;
  for (int x : b) m.b[i++] = x;
  return m;
}

MultiIndexForm random_form(int n, int q, int degree, std::mt19937_64& rng) {
  MultiIndexForm f(n, q);
  for (MultiIndex I : multi_indices(n, q)) f.set(I, random_polynomial(n, degree, 6, rng));
  return f;
}

}  // namespace

TEST_CASE("closed forms at the origin") {
  const ModelWeight w({-1.0, 2.0, 3.0});
  CHECK(model_kernel_origin(w, 1) == doctest::Approx(6.0 / (pi * pi * pi)).epsilon(1e-15));
  CHECK(model_kernel_origin(w, 1) == doctest::Approx(0.19351).epsilon(1e-4));
  CHECK(model_kernel_origin(ModelWeight({1.0, 1.0}), 1) == 0.0);
  CHECK(model_kernel_origin(ModelWeight({2.0}), 0) == doctest::Approx(0.63662).epsilon(1e-5));

  CHECK(model_extremal_origin(w, 1) == doctest::Approx(model_kernel_origin(w, 1)).epsilon(1e-14));
  CHECK(model_extremal_origin(ModelWeight({1.0}), 1) == 0.0);
  CHECK(model_extremal_origin(ModelWeight({5.0}), 0) == doctest::Approx(5.0 / pi).epsilon(1e-15));

  const ModelWeight w2({-1.0, 2.0});
  CHECK(model_component_extremal(w2, 1, MultiIndex::from_labels({1})).value ==
        doctest::Approx(2.0 / (pi * pi)));
  CHECK(model_component_extremal(w2, 1, MultiIndex::from_labels({2})).value == 0.0);
  const ModelWeight w3({1.0, 2.0});
  for (MultiIndex I : multi_indices(2, 1)) CHECK(model_component_extremal(w3, 1, I).value == 0.0);

  CHECK_THROWS_AS(ModelWeight({1.0, 0.0}), DomainError);
}

TEST_CASE("negatives-first permutation is explicit") {
  const ModelWeight w({2.0, -1.0, 3.0, });
  const auto r = negatives_first(w);
  CHECK(r.permutation == std::vector<int>{1, 0, 2});
  CHECK(r.lambda == std::vector<double>{-1.0, 2.0, 3.0});
  const auto c = model_component_extremal(w, 1, MultiIndex::from_labels({1}));
  CHECK(c.value == doctest::Approx(6.0 / (pi * pi * pi)));
  CHECK(c.reindexing.permutation == r.permutation);
}

TEST_CASE("kernel sums over q and vanishes off the signature") {
  for (const std::vector<double>& l : {std::vector<double>{-1.0, 2.0, 3.0}, {1.0, -4.0}, {-0.5}, {2.0, 3.0}}) {
    const ModelWeight w(l);
    double total = 0.0, prod = 1.0;
    for (int q = 0; q <= w.n(); ++q) {
      const double v = model_kernel_origin(w, q);
      if (q != w.signature()) CHECK(v == 0.0);
      total += v;
    }
    for (double x : l) prod *= std::abs(x) / pi;
    CHECK(total == doctest::Approx(prod).epsilon(1e-15));
  }
}

TEST_CASE("fock kernel") {
  const ModelWeight w({1.0});
  const cplx zero[1] = {0.0};
  for (int d : {0, 1, 5, 30}) CHECK(fock_kernel(w, d, zero) == model_kernel_origin(w, 0));
  CHECK(fock_kernel(w, 10, zero) == 1.0 / pi);
  // Direct series: (1/pi) e^{-1} sum_{a <= 10} 1/a!.
  double series = 0.0, fact = 1.0;
  for (int a = 0; a <= 10; ++a) {
    if (a > 0) fact *= a;
    series += 1.0 / fact;
  }
  const cplx one[1] = {1.0};
  CHECK(fock_kernel(w, 10, one) == doctest::Approx(series * std::exp(-1.0) / pi).epsilon(1e-14));
  CHECK(std::abs(fock_kernel(w, 10, one) - 1.0 / pi) < 1e-7);
  const ModelWeight w23({2.0, 3.0});
  const cplx o2[2] = {0.0, 0.0};
  CHECK(fock_kernel(w23, 0, o2) == doctest::Approx(6.0 / (pi * pi)).epsilon(1e-15));
  for (int d : {0, 3, 12}) CHECK(fock_kernel(w23, d, o2) == model_kernel_origin(w23, 0));
  CHECK_THROWS_AS(fock_kernel(ModelWeight({-1.0}), 3, zero), DomainError);
}

TEST_CASE("adjoint and Laplacian examples") {
  const auto one = Polynomial::constant(1, 1.0);
  const auto z = Polynomial::z(1, 0), zb = Polynomial::zbar(1, 0);
  const auto a1 = dbar_adjoint_apply(ModelWeight({2.0}), 0, one);
  CHECK(a1.terms().size() == 1);
  CHECK(a1.coeff(mono({0}, {1})) == cplx(2.0));
  const auto a2 = dbar_adjoint_apply(ModelWeight({1.0}), 0, z);
  CHECK(a2.coeff(Monomial{}) == cplx(-1.0));
  CHECK(a2.coeff(mono({1}, {1})) == cplx(1.0));
  CHECK(a2.terms().size() == 2);
  CHECK(dbar_adjoint_apply(ModelWeight({1.0}), 0, Polynomial(1)).is_zero());

  const ModelWeight w1({1.0});
  MultiIndexForm fz(1, 0);
  fz.set(MultiIndex{}, z);
  CHECK(model_laplacian_apply(w1, fz).component(MultiIndex{}).is_zero());
  MultiIndexForm fzb(1, 0);
  fzb.set(MultiIndex{}, zb);
  const auto dz = model_laplacian_apply(w1, fzb).component(MultiIndex{});
  CHECK((dz - zb).is_zero());
  MultiIndexForm f1(1, 1);
  f1.set(MultiIndex::first(1), one);
  const auto d1 = model_laplacian_apply(ModelWeight({2.0}), f1).component(MultiIndex::first(1));
  CHECK((d1 - one * cplx(2.0)).is_zero());
}

TEST_CASE("degree budget overflow") {
  Polynomial p(1, 3);
  Monomial m;
  m.a[0] = 3;
  p.add(m, 1.0);
  CHECK_THROWS_AS(dbar_adjoint_apply(ModelWeight({1.0}), 0, p), CapacityError);
  CHECK_THROWS_AS(Polynomial(4), CapacityError);
}

TEST_CASE("commutator examples") {
  Polynomial p = Polynomial::term(1, mono({1}, {2}));
  CHECK(commutator_residual(ModelWeight({3.0}), 0, 0, p).is_zero());
  const auto q = Polynomial::term(2, mono({1, 0}, {0, 1}));
  CHECK(commutator_residual(ModelWeight({1.0, 4.0}), 0, 1, q).is_zero());
  CHECK(commutator_residual(ModelWeight({1.0}), 0, 0, Polynomial(1)).is_zero());
}

TEST_CASE("commutator residual vanishes on a randomized suite") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> nd(1, 3), lam(-12, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = nd(rng);
    std::vector<double> l(n);
    for (auto& x : l) {
      int v = 0;
      while (v == 0) v = lam(rng);
      x = v / 4.0;
    }
    const ModelWeight w(l);
    std::uniform_int_distribution<int> ax(0, n - 1);
    const auto p = random_polynomial(n, 6, 8, rng);
    const int i = ax(rng), j = ax(rng);
    const auto r = commutator_residual(w, i, j, p);
    CAPTURE(r.to_string());
    CHECK(r.is_zero());
  }
}

TEST_CASE("Laplacian is symmetric and nonnegative") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(0.3, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<double> l(n);
    for (auto& x : l) x = lam(rng);
    const ModelWeight w(l);
    const int q = trial % (n + 1);
    const auto a = random_form(n, q, 6, rng), b = random_form(n, q, 6, rng);
    const auto la = model_laplacian_apply(w, a), lb = model_laplacian_apply(w, b);
    const cplx lhs = form_inner_product(la, b, l), rhs = form_inner_product(a, lb, l);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    const cplx aa = form_inner_product(la, a, l);
    CHECK(aa.real() >= -1e-10 * std::max(1.0, std::abs(aa)));
  }
}

TEST_CASE("moment inner product matches quadrature") {
  std::mt19937_64 rng(4);
  const auto grid = numerics::plane_quadrature(24, 32, numerics::GaussianDecay{1.7});
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_polynomial(1, 6, 5, rng), q = random_polynomial(1, 6, 5, rng);
    cplx s = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto z = grid.point(k);
      s += grid.weights[k] * p.eval(z) * std::conj(q.eval(z)) * std::exp(-1.7 * std::norm(z[0]));
    }
    const std::vector<double> l{1.7};
    const cplx m = inner_product(p, q, l);
    CHECK(std::abs(m - s) <= 1e-10 * std::max(1.0, std::abs(m)));
  }
}

TEST_CASE("generalized eigenproblem on {1, zbar}") {
  const ModelWeight w({1.0});
  const std::vector<double> l{1.0};
  std::vector<Polynomial> basis{Polynomial::constant(1, 1.0), Polynomial::zbar(1, 0)};
  numerics::HermitianMatrix a(2), g(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j <= i; ++j) {
      g.set(i, j, inner_product(basis[j], basis[i], l));
      a.set(i, j, inner_product(laplacian_component(w, MultiIndex{}, basis[j]), basis[i], l));
    }
  }
  const auto e = numerics::sym_geneig(a, g);
  CHECK(std::abs(e.values[0]) < 1e-14);
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("harmonic reduction examples") {
  const ModelWeight wn({-1.0});
  GaussianForm g1;
  g1.n = 1;
  g1.q = 1;
  g1.components[MultiIndex::first(1)] = {Polynomial::constant(1, 1.0), {-1.0}};
  const auto r1 = harmonic_reduce(wn, g1).components.at(MultiIndex::first(1));
  CHECK((r1.f - Polynomial::constant(1, 1.0)).is_zero());
  CHECK(r1.phi == std::vector<double>{1.0});

  g1.components[MultiIndex::first(1)] = {Polynomial::zbar(1, 0), {-1.0}};
  const auto r2 = harmonic_reduce(wn, g1).components.at(MultiIndex::first(1));
  CHECK((r2.f - Polynomial::z(1, 0)).is_zero());

  GaussianForm g0;
  g0.n = 1;
  g0.q = 0;
  g0.components[MultiIndex{}] = {Polynomial::z(1, 0), {0.0}};
  const auto r3 = harmonic_reduce(ModelWeight({2.0}), g0).components.at(MultiIndex{});
  CHECK((r3.f - Polynomial::z(1, 0)).is_zero());
  CHECK(r3.phi == std::vector<double>{2.0});

  g1.components[MultiIndex::first(1)] = {Polynomial::z(1, 0), {-1.0}};
  CHECK_THROWS_AS(harmonic_reduce(wn, g1), NotHarmonicError);
  g0.components[MultiIndex{}] = {Polynomial::zbar(1, 0), {0.0}};
  CHECK_THROWS_AS(harmonic_reduce(ModelWeight({2.0}), g0), NotHarmonicError);
}

TEST_CASE("harmonic reduction in two variables") {
  const ModelWeight w({-2.0, 3.0});
  GaussianForm g;
  g.n = 2;
  g.q = 1;
  // zbar_1^2 z_2 e^{-2|z_1|^2} dzbar_1 is harmonic.
  g.components[MultiIndex::from_labels({1})] = {Polynomial::term(2, mono({0, 1}, {2, 0})), {-2.0, 0.0}};
  const auto r = harmonic_reduce(w, g).components.at(MultiIndex::from_labels({1}));
  CHECK((r.f - Polynomial::term(2, mono({2, 1}, {0, 0}))).is_zero());
  CHECK(r.phi == std::vector<double>{2.0, 3.0});
}

TEST_CASE("submean inequality") {
  const ModelWeight w({1.0});
  const auto g1 = numerics::polydisc_quadrature(1, 16, 16, 1.0);
  const auto g2 = numerics::polydisc_quadrature(1, 16, 16, 2.0);
  const auto c = submean_check(Polynomial::constant(1, 1.0), w, 1.0, g1);
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-14));
  const auto z = submean_check(Polynomial::z(1, 0), w, 1.0, g1);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs > 0.0);
  const auto s = submean_check(Polynomial::constant(1, 1.0) + Polynomial::z(1, 0), w, 2.0, g2);
  CHECK(s.lhs < s.rhs);
  CHECK(std::isfinite(s.rhs));
  CHECK_THROWS_AS(submean_check(Polynomial::constant(1, 1.0), w, 1.0, g2), DomainError);

  std::mt19937_64 rng(1);
  const ModelWeight w2({0.5, 2.0});
  const auto pd = numerics::polydisc_quadrature(2, 10, 12, 1.5);
  for (int t = 0; t < 10; ++t) {
    Polynomial f(2);
    const auto mixed = random_polynomial(2, 5, 6, rng);
    for (const auto& [m, co] : mixed.terms()) {
      Monomial h = m;
      h.b = {};
      f.add(h, co);
    }
    const auto v = submean_check(f, w2, 1.5, pd);
    CHECK(v.lhs <= v.rhs + 1e-10);
  }
}
