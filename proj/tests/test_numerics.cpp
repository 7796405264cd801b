#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "bergman/errors.hpp"
#include "bergman/numerics/linalg.hpp"
#include "bergman/numerics/moments.hpp"
#include "bergman/numerics/quadrature.hpp"

using namespace bergman;
using namespace bergman::numerics;
using std::numbers::pi;

namespace {

// Independent reference: polar-coordinate integral of r^{2a} e^{-lambda r^2}
// 2 pi r dr by a fine composite Simpson rule in r.
double polar_moment_reference(int a, double lambda) {
  const double rmax = std::sqrt((40.0 + 4.0 * a) / lambda);
  const int steps = 200000;
  const double h = rmax / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double r = i * h;
    const double f = std::pow(r, 2 * a + 1) * std::exp(-lambda * r * r);
    s += (i == 0 || i == steps ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f;
  }
  return 2.0 * pi * s * h / 3.0;
}

Eigen::MatrixXcd random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {nd(rng), nd(rng)};
  return m;
}

HermitianMatrix random_spd(int n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd m = random_matrix(n, rng);
  Eigen::MatrixXcd g = m * m.adjoint();
  g += n * Eigen::MatrixXcd::Identity(n, n);
  return HermitianMatrix::from_dense(g);
}

}  // namespace

TEST_CASE("gaussian moment values") {
  const std::vector<int> a0{0}, a1{1}, a2{2};
  const std::vector<double> l1{1.0}, l2{2.0};
  CHECK(gaussian_moment(a0, l1) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(gaussian_moment(a1, l2) == doctest::Approx(polar_moment_reference(1, 2.0)).epsilon(1e-10));
  CHECK(gaussian_moment(a2, l1) == doctest::Approx(polar_moment_reference(2, 1.0)).epsilon(1e-10));
  const std::vector<double> bad{0.0};
  CHECK_THROWS_AS(gaussian_moment(a0, bad), DomainError);
  const std::vector<double> neg{-1.0};
  CHECK_THROWS_AS(gaussian_moment(a0, neg), DomainError);
}

TEST_CASE("gaussian moment recurrence") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ai(0, 8);
  std::uniform_real_distribution<double> li(0.2, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a{ai(rng), ai(rng), ai(rng)};
    std::vector<double> l{li(rng), li(rng), li(rng)};
    const double m = gaussian_moment(a, l);
    for (int i = 0; i < 3; ++i) {
      auto b = a;
      ++b[i];
      CHECK(gaussian_moment(b, l) == doctest::Approx((a[i] + 1) / l[i] * m).epsilon(1e-13));
    }
    CHECK(std::exp(log_gaussian_moment(a, l)) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const Rule1D r = gauss_legendre(12, -1.0, 2.0);
  for (int p = 0; p <= 23; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], p);
    const double exact = (std::pow(2.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Laguerre integrates x^p e^{-x} exactly") {
  const Rule1D r = gauss_laguerre_scaled(20);
  for (int p = 0; p <= 39; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], p) * std::exp(-r.x[i]);
    CHECK(s == doctest::Approx(std::tgamma(p + 1.0)).epsilon(1e-11));
  }
}

TEST_CASE("plane quadrature examples") {
  const auto proj = plane_quadrature(16, 8, ProjectiveDecay{2.0});
  std::vector<double> f(proj.size());
  for (std::size_t p = 0; p < proj.size(); ++p) {
    const double u = std::norm(proj.nodes[p]);
    f[p] = 1.0 / (pi * (1.0 + u) * (1.0 + u));
  }
  CHECK(proj.integrate(f) == doctest::Approx(1.0).epsilon(1e-10));

  const auto gau = plane_quadrature(16, 8, GaussianDecay{1.0});
  for (std::size_t p = 0; p < gau.size(); ++p) f[p] = std::exp(-std::norm(gau.nodes[p]));
  CHECK(gau.integrate(f) == doctest::Approx(pi).epsilon(1e-10));

  std::vector<double> zero(gau.size(), 0.0);
  CHECK(gau.integrate(zero) == 0.0);
  CHECK(gau.size() == 16u * 8u);
  for (double w : gau.weights) CHECK(w > 0.0);
}

TEST_CASE("plane quadrature capacity and counts") {
  CHECK_THROWS_AS(plane_quadrature(3, 8, GaussianDecay{1.0}), CapacityError);
  CHECK_THROWS_AS(plane_quadrature(8, 3, GaussianDecay{1.0}), CapacityError);
  CHECK_THROWS_AS(plane_quadrature(4, 8, GaussianDecay{1.0}, 8), CapacityError);
  CHECK_THROWS_AS(plane_quadrature(4, 8, ProjectiveDecay{12.0}, 10), CapacityError);
  CHECK_NOTHROW(plane_quadrature(6, 8, ProjectiveDecay{12.0}, 10));
}

TEST_CASE("plane quadrature radial moments within the budget") {
  for (int j = 0; j <= 10; ++j) {
    const auto g = plane_quadrature(8, 8, GaussianDecay{1.5}, 2 * 8 - 1);
    std::vector<double> f(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
      const double u = std::norm(g.nodes[p]);
      f[p] = std::pow(u, j) * std::exp(-1.5 * u);
    }
    const std::vector<int> a{j};
    const std::vector<double> l{1.5};
    CHECK(g.integrate(f) == doctest::Approx(gaussian_moment(a, l)).epsilon(1e-10));
  }
  // r^{2j} (1+r^2)^{-p}: integral pi * B(j+1, p-j-1).
  const int p = 14;
  const auto g = plane_quadrature(8, 8, ProjectiveDecay{double(p)}, p - 2);
  for (int j = 0; j <= p - 2; ++j) {
    std::vector<double> f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double u = std::norm(g.nodes[k]);
      f[k] = std::pow(u, j) * std::pow(1.0 + u, -p);
    }
    const double exact = pi * std::tgamma(j + 1.0) * std::tgamma(double(p - j - 1)) / std::tgamma(double(p));
    CHECK(g.integrate(f) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("angular exactness kills mismatched monomials") {
  const auto g = plane_quadrature(12, 16, GaussianDecay{1.0});
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      if (a == b) continue;
      double re = 0.0, im = 0.0;
      for (std::size_t p = 0; p < g.size(); ++p) {
        const auto z = g.nodes[p];
        const auto v = std::pow(z, a) * std::pow(std::conj(z), b) * std::exp(-std::norm(z));
        re += g.weights[p] * v.real();
        im += g.weights[p] * v.imag();
      }
      CHECK(std::abs(re) < 1e-12);
      CHECK(std::abs(im) < 1e-12);
    }
  }
}

TEST_CASE("disc, polydisc and ball volumes") {
  const auto d = disc_quadrature(8, 8, 2.0);
  std::vector<double> one(d.size(), 1.0);
  CHECK(d.integrate(one) == doctest::Approx(4.0 * pi).epsilon(1e-13));
  const auto pd = polydisc_quadrature(2, 6, 6, 1.5);
  std::vector<double> one2(pd.size(), 1.0);
  CHECK(pd.integrate(one2) == doctest::Approx(std::pow(pi * 2.25, 2)).epsilon(1e-12));
  const auto b = ball_quadrature(2, 8, 8, 6, 2.0);
  std::vector<double> one3(b.size(), 1.0);
  // Volume of the ball of radius R in C^2 is pi^2 R^4 / 2.
  CHECK(b.integrate(one3) == doctest::Approx(pi * pi * 16.0 / 2.0).epsilon(1e-12));
  std::vector<double> w1(b.size());
  for (std::size_t p = 0; p < b.size(); ++p) w1[p] = std::norm(b.nodes[2 * p]);
  // Integral of |w1|^2 over the ball: pi^2 R^6 / 6.
  CHECK(b.integrate(w1) == doctest::Approx(pi * pi * 64.0 / 6.0).epsilon(1e-12));
  CHECK_THROWS_AS(ball_quadrature(3, 8, 8, 6, 1.0), CapacityError);
}

TEST_CASE("cholesky examples") {
  const auto id = HermitianMatrix::identity(3);
  CHECK((cholesky_factor(id) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
  Eigen::VectorXd d(2);
  d << 4.0, 9.0;
  const Eigen::MatrixXcd l = cholesky_factor(HermitianMatrix::diagonal(d));
  CHECK(l(0, 0).real() == 2.0);
  CHECK(l(1, 1).real() == 3.0);
  CHECK(std::abs(l(1, 0)) == 0.0);

  // Gram of {1, z} under e^{-|z|^2} from quadrature.
  const auto g = plane_quadrature(8, 8, GaussianDecay{1.0});
  HermitianMatrix gram(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      std::complex<double> s = 0.0;
      for (std::size_t p = 0; p < g.size(); ++p) {
        const auto z = g.nodes[p];
        s += g.weights[p] * std::pow(z, i) * std::conj(std::pow(z, j)) * std::exp(-std::norm(z));
      }
      gram.set(j, i, s);
    }
  }
  const Eigen::MatrixXcd lg = cholesky_factor(gram);
  CHECK(lg(0, 0).real() == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  CHECK(lg(1, 1).real() == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  CHECK(std::abs(lg(1, 0)) < 1e-12);
}

TEST_CASE("cholesky rank deficiency names the pivot") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(0, 1) = m(1, 0) = 1.0;  // rows 0 and 1 coincide
  m(2, 2) = 1.0;
  try {
    cholesky_factor(HermitianMatrix::from_dense(m));
    FAIL("expected rank deficiency");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.pivot() == 1u);
  }
}

TEST_CASE("cholesky reconstructs random positive definite matrices") {
  std::mt19937_64 rng(11);
  for (int n : {1, 2, 5, 17, 50}) {
    const HermitianMatrix g = random_spd(n, rng);
    const Eigen::MatrixXcd l = cholesky_factor(g);
    const double rel = (l * l.adjoint() - g.dense()).norm() / g.dense().norm();
    CHECK(rel < 1e-10);
    CHECK((cholesky_factor(g) - l).norm() == 0.0);
  }
}

TEST_CASE("sym_geneig examples") {
  const auto id = HermitianMatrix::identity(4);
  const GenEig e = sym_geneig(id, id);
  for (int i = 0; i < 4; ++i) CHECK(e.values[i] == doctest::Approx(1.0).epsilon(1e-14));
  Eigen::VectorXd d(2);
  d << 3.0, 1.0;
  const GenEig e2 = sym_geneig(HermitianMatrix::diagonal(d), HermitianMatrix::identity(2));
  CHECK(e2.values[0] == doctest::Approx(1.0));
  CHECK(e2.values[1] == doctest::Approx(3.0));
}

TEST_CASE("sym_geneig residuals and congruence invariance") {
  std::mt19937_64 rng(3);
  for (int n : {3, 8, 20}) {
    const HermitianMatrix g = random_spd(n, rng);
    const HermitianMatrix a = HermitianMatrix::from_dense(random_matrix(n, rng) + random_matrix(n, rng).adjoint(), 1e300);
    const GenEig e = sym_geneig(a, g);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXcd v = e.vectors.col(j);
      const double res = (a.dense() * v - e.values[j] * g.dense() * v).norm();
      CHECK(res <= 1e-8 * a.norm());
      if (j > 0) CHECK(e.values[j] >= e.values[j - 1]);
    }
    const Eigen::MatrixXcd gram = e.vectors.adjoint() * g.dense() * e.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-10);

    Eigen::MatrixXcd m = random_matrix(n, rng) * 0.1 + Eigen::MatrixXcd::Identity(n, n);
    const GenEig e3 = sym_geneig(a.congruence(m), g.congruence(m));
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(e3.values[j] - e.values[j]) <= 1e-9 * std::max(1.0, std::abs(e.values[j])));
    }
  }
}
