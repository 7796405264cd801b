#include "bergman/geometry/weight.hpp"

#include <cmath>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman::geometry {

Weight::Weight(int dim, Eval eval, Hessian hessian, Jet jet)
    : dim_(dim), eval_(std::move(eval)), hessian_(std::move(hessian)), jet_(std::move(jet)) {
  if (dim_ < 1) throw DomainError("weight dimension must be positive");
  if (!eval_) throw DomainError("weight needs an evaluation function");
}

DerivativeMode Weight::mode() const {
  return (hessian_ || jet_) ? DerivativeMode::analytic : DerivativeMode::finite_difference;
}

double Weight::fd_step(Point z) {
  double norm2 = 0.0;
  for (cplx c : z) norm2 += std::norm(c);
  return 1e-4 * (1.0 + std::sqrt(norm2));
}

RealJet Weight::fd_real_jet(Point z) const {
  const int n2 = 2 * dim_;
  const double h = fd_step(z);
  std::vector<double> x(n2);
  for (int a = 0; a < dim_; ++a) {
    x[2 * a] = z[a].real();
    x[2 * a + 1] = z[a].imag();
  }
  for (int c = 0; c < n2; ++c) {
    if (x[c] + h == x[c] || x[c] - h == x[c]) {
      throw NumericalDerivativeError("finite-difference step " + std::to_string(h) +
                                     " underflows at coordinate " + std::to_string(c));
    }
  }
  std::vector<cplx> buf(dim_);
  auto f = [&](const std::vector<double>& y) {
    for (int a = 0; a < dim_; ++a) buf[a] = cplx(y[2 * a], y[2 * a + 1]);
    const double v = eval_(buf);
    if (!std::isfinite(v)) {
      throw NumericalDerivativeError("weight is not finite near the finite-difference stencil");
    }
    return v;
  };
  RealJet jet;
  jet.value = f(x);
  jet.grad.resize(n2);
  jet.hess.resize(n2, n2);
  for (int c = 0; c < n2; ++c) {
    auto y = x;
    y[c] = x[c] + h;
    const double fp = f(y);
    y[c] = x[c] - h;
    const double fm = f(y);
    jet.grad[c] = (fp - fm) / (2.0 * h);
    jet.hess(c, c) = (fp - 2.0 * jet.value + fm) / (h * h);
  }
  for (int c = 0; c < n2; ++c) {
    for (int e = c + 1; e < n2; ++e) {
      auto y = x;
      double s = 0.0;
      for (int sc : {1, -1}) {
        for (int se : {1, -1}) {
          y[c] = x[c] + sc * h;
          y[e] = x[e] + se * h;
          s += sc * se * f(y);
        }
      }
      jet.hess(c, e) = jet.hess(e, c) = s / (4.0 * h * h);
    }
  }
  return jet;
}

RealJet Weight::real_jet(Point z) const { return jet_ ? jet_(z) : fd_real_jet(z); }

HermitianMatrix complex_hessian_from_jet(const RealJet& jet, int dim) {
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double xx = jet.hess(2 * i, 2 * j), yy = jet.hess(2 * i + 1, 2 * j + 1);
      const double xy = jet.hess(2 * i, 2 * j + 1), yx = jet.hess(2 * i + 1, 2 * j);
      m(i, j) = cplx(0.25 * (xx + yy), 0.25 * (xy - yx));
    }
  }
  return HermitianMatrix::from_dense(m, 1e-6);
}

HermitianMatrix Weight::fd_complex_hessian(Point z) const {
  return complex_hessian_from_jet(fd_real_jet(z), dim_);
}

HermitianMatrix Weight::complex_hessian(Point z) const {
  if (hessian_) return hessian_(z);
  return complex_hessian_from_jet(real_jet(z), dim_);
}

Weight radial_weight(RadialProfile p) {
  auto eval = [g = p.g](Point z) { return g(std::norm(z[0])); };
  auto hess = [dg = p.dg, d2g = p.d2g](Point z) {
    const double u = std::norm(z[0]);
    Eigen::VectorXd d(1);
    d[0] = dg(u) + u * d2g(u);
    return HermitianMatrix::diagonal(d);
  };
  auto jet = [p](Point z) {
    const double x = z[0].real(), y = z[0].imag(), u = x * x + y * y;
    const double g1 = p.dg(u), g2 = p.d2g(u);
    RealJet j;
    j.value = p.g(u);
    j.grad = Eigen::Vector2d(2.0 * x * g1, 2.0 * y * g1);
    j.hess.resize(2, 2);
    j.hess(0, 0) = 2.0 * g1 + 4.0 * x * x * g2;
    j.hess(1, 1) = 2.0 * g1 + 4.0 * y * y * g2;
    j.hess(0, 1) = j.hess(1, 0) = 4.0 * x * y * g2;
    return j;
  };
  return Weight(1, eval, hess, jet);
}

BaseMetric BaseMetric::euclidean(int dim) {
  BaseMetric m;
  m.h = [dim](Point) { return HermitianMatrix::identity(dim); };
  m.volume_density = [](Point) { return 1.0; };
  return m;
}

BaseMetric BaseMetric::fubini_study() {
  BaseMetric m;
  auto density = [](Point z) {
    const double s = 1.0 + std::norm(z[0]);
    return 1.0 / (s * s);
  };
  m.h = [density](Point z) {
    Eigen::VectorXd d(1);
    d[0] = density(z);
    return HermitianMatrix::diagonal(d);
  };
  m.volume_density = density;
  return m;
}

}  // namespace bergman::geometry
