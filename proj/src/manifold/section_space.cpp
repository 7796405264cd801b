#include "bergman/manifold/section_space.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/numerics/moments.hpp"
#include "bergman/simd/kernels.hpp"

namespace bergman::manifold {
namespace {

double log_binomial(int n, int j) {
  return numerics::log_factorial(n) - numerics::log_factorial(j) - numerics::log_factorial(n - j);
}

double metric_density(const ManifoldChart& chart, cplx c) {
  const cplx p[1] = {c};
  return chart.metric.volume_density(p);
}

// Basis values at the nodes of a z-chart grid, row-major (basis index, node).
struct ValueMatrix {
  std::vector<double> re, im;
  std::size_t nodes = 0;
  const double* row_re(std::size_t i) const { return re.data() + i * nodes; }
  const double* row_im(std::size_t i) const { return im.data() + i * nodes; }
};

ValueMatrix values_on_grid(const SectionSpace& space, const QuadratureGrid& grid) {
  const std::size_t dim = space.dimension();
  ValueMatrix v;
  v.nodes = grid.size();
  v.re.assign(dim * v.nodes, 0.0);
  v.im.assign(dim * v.nodes, 0.0);
  for (std::size_t p = 0; p < v.nodes; ++p) {
    const Eigen::VectorXcd u = space.normalized_values({false, grid.nodes[p]});
    for (std::size_t i = 0; i < dim; ++i) {
      v.re[i * v.nodes + p] = u[i].real();
      v.im[i * v.nodes + p] = u[i].imag();
    }
  }
  return v;
}

void check_grid(const QuadratureGrid& grid, int top, int n_abs) {
  const auto* plane = std::get_if<numerics::PlaneDomain>(&grid.domain);
  if (grid.dim != 1 || plane == nullptr ||
      !std::holds_alternative<numerics::ProjectiveDecay>(plane->decay)) {
    throw DomainError("section spaces need a projective whole-plane grid");
  }
  if (grid.radial_degree < 2 * n_abs + 4) {
    throw CapacityError("grid radial degree " + std::to_string(grid.radial_degree) +
                        " is below the budget " + std::to_string(2 * n_abs + 4));
  }
  if (grid.angular_count <= top) {
    throw CapacityError("grid has " + std::to_string(grid.angular_count) +
                        " angular nodes, needs more than " + std::to_string(top));
  }
}

}  // namespace

ChartPoint ChartPoint::from_affine(cplx z) {
  if (std::abs(z) > 1.0) return {true, 1.0 / z};
  return {false, z};
}

cplx ChartPoint::affine() const {
  if (!far) return coord;
  if (coord == cplx(0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
  return 1.0 / coord;
}

std::vector<ChartPoint> default_sample_points() {
  const double radii[] = {0.0, 0.3, 0.7, 1.2, 2.5};
  std::vector<ChartPoint> pts;
  for (double r : radii) pts.push_back(ChartPoint::from_affine(r));
  for (double r : radii) {
    pts.push_back(r == 0.0 ? ChartPoint::infinity() : ChartPoint::from_affine(1.0 / r));
  }
  return pts;
}

QuadratureGrid default_grid(const ManifoldChart& chart, int k) {
  const int n = std::abs(k * chart.degree);
  return numerics::plane_quadrature(2 * n + 32, 2 * n + 16,
                                    numerics::ProjectiveDecay{static_cast<double>(n + 2)});
}

int expected_dimension(int degree, int k, int q) {
  const int kd = k * degree;
  if (q == 0) return std::max(0, kd + 1);
  return std::max(0, -kd - 1);
}

Eigen::MatrixXcd SectionSpace::orthonormalizer() const {
  const Eigen::Index n = chol_.rows();
  return chol_.adjoint().triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(n, n));
}

double SectionSpace::effective_weight(const ChartPoint& x) const {
  const cplx p[1] = {x.coord};
  const double phi = x.far ? chart_.far_weight(p) : chart_.weight(p);
  if (q_ == 0) return k_ * phi;
  return -k_ * phi + std::log(metric_density(chart_, x.coord));
}

Eigen::VectorXcd SectionSpace::normalized_values(const ChartPoint& x) const {
  const int dim = dimension();
  Eigen::VectorXcd u(dim);
  if (dim == 0) return u;
  const double half = 0.5 * effective_weight(x);
  const double r = std::abs(x.coord);
  const double log_r = r > 0.0 ? std::log(r) : 0.0;
  const double theta = r > 0.0 ? std::arg(x.coord) : 0.0;
  for (int j = 0; j < dim; ++j) {
    const int e = x.far ? top_ - exponents_[j] : exponents_[j];
    if (r == 0.0 && e > 0) {
      u[j] = 0.0;
      continue;
    }
    const double mag = std::exp(0.5 * log_binomial_[j] + e * log_r - half);
    u[j] = std::polar(mag, e * theta);
  }
  if (recombination_) u = (*recombination_) * u;
  if (scale_.size() == dim) u.array() *= scale_.array().cast<cplx>();
  return u;
}

SectionSpace build_space(const ManifoldChart& chart, int k, int q, const QuadratureGrid& grid,
                         const SpaceOptions& options) {
  if (chart.kind != geometry::ChartKind::projective_line) {
    throw DomainError("section spaces are built on the projective line");
  }
  if (k < 1) throw DomainError("tensor power k must be at least 1");
  if (q != 0 && q != 1) throw DomainError("q must be 0 or 1 on the projective line");
  SectionSpace s;
  s.chart_ = chart;
  s.k_ = k;
  s.q_ = q;
  const int kd = k * chart.degree;
  s.top_ = q == 0 ? kd : -kd - 2;
  for (int j = 0; j <= s.top_; ++j) {
    s.exponents_.push_back(j);
    s.log_binomial_.push_back(log_binomial(s.top_, j));
  }
  s.grid_ = grid;
  const int dim = s.dimension();
  if (dim == 0) return s;
  check_grid(grid, s.top_, std::abs(kd));
  if (options.recombination) {
    if (options.recombination->rows() != dim || options.recombination->cols() != dim) {
      throw DomainError("recombination matrix has the wrong size");
    }
    s.recombination_ = options.recombination;
  }
  ValueMatrix v = values_on_grid(s, grid);
  std::vector<double> wh(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    wh[p] = grid.weights[p] * metric_density(chart, grid.nodes[p]);
  }
  const auto& kern = simd::active();
  s.scale_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const double norm2 =
        kern.weighted_cdot(wh.data(), v.row_re(i), v.row_im(i), v.row_re(i), v.row_im(i), v.nodes)
            .real();
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw CapacityError("basis vector " + std::to_string(i) + " has no mass on the grid");
    }
    s.scale_[i] = 1.0 / std::sqrt(norm2);
    for (std::size_t p = 0; p < v.nodes; ++p) {
      v.re[i * v.nodes + p] *= s.scale_[i];
      v.im[i * v.nodes + p] *= s.scale_[i];
    }
  }
  s.gram_ = HermitianMatrix(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      s.gram_.set(i, j,
                  kern.weighted_cdot(wh.data(), v.row_re(i), v.row_im(i), v.row_re(j),
                                     v.row_im(j), v.nodes));
    }
  }
  try {
    s.chol_ = numerics::cholesky_factor(s.gram_);
  } catch (const RankDeficiencyError& e) {
    throw CapacityError(std::string("Gram matrix is numerically singular (quadrature too coarse "
                                    "or basis degenerate): ") +
                        e.what());
  }
  return s;
}

SectionSpace build_section_space(const ManifoldChart& chart, int k, const QuadratureGrid& grid,
                                 const SpaceOptions& options) {
  return build_space(chart, k, 0, grid, options);
}

SectionSpace build_dual_space(const ManifoldChart& chart, int k, const QuadratureGrid& grid,
                              const SpaceOptions& options) {
  return build_space(chart, k, 1, grid, options);
}

double bergman_at(const SectionSpace& space, const ChartPoint& x) {
  if (space.dimension() == 0) return 0.0;
  Eigen::MatrixXcd y = space.normalized_values(x);
  numerics::forward_substitute(space.cholesky(), y);
  return y.squaredNorm();
}

ExtremalValue extremal_at(const SectionSpace& space, const ChartPoint& x) {
  if (space.dimension() == 0) return {0.0, {0.0}};
  // Maximiser of |alpha(x)|^2 / |alpha|^2 over coefficient vectors, found by
  // a pivoted LU solve independent of the Cholesky factor.
  const Eigen::VectorXcd u = space.normalized_values(x);
  const Eigen::MatrixXcd& g = space.gram().dense();
  const Eigen::VectorXcd w = g.partialPivLu().solve(u);
  const double num = std::norm(w.dot(u));
  const double den = w.dot(g * w).real();
  const double s = den > 0.0 ? num / den : 0.0;
  return {s, {s}};
}

SandwichMargins sandwich_check(const SectionSpace& space, const ChartPoint& x) {
  SandwichMargins m;
  m.b = bergman_at(space, x);
  const ExtremalValue e = extremal_at(space, x);
  m.s = e.s;
  for (double c : e.components) m.component_sum += c;
  m.lower = m.b - m.s;
  m.upper = m.component_sum - m.b;
  if (m.lower < -1e-9 || m.upper < -1e-9) {
    throw InvariantFailure("sandwich S <= B <= sum S_I violated: S = " + std::to_string(m.s) +
                           ", B = " + std::to_string(m.b) +
                           ", sum S_I = " + std::to_string(m.component_sum));
  }
  return m;
}

std::vector<double> bergman_on_grid(const SectionSpace& space, const QuadratureGrid& grid) {
  std::vector<double> acc(grid.size(), 0.0);
  const int dim = space.dimension();
  if (dim == 0) return acc;
  ValueMatrix v = values_on_grid(space, grid);
  const auto& kern = simd::active();
  const Eigen::MatrixXcd& l = space.cholesky();
  const std::size_t n = v.nodes;
  for (int i = 0; i < dim; ++i) {
    double* ri = v.re.data() + i * n;
    double* ii = v.im.data() + i * n;
    for (int k = 0; k < i; ++k) {
      const cplx lik = l(i, k);
      kern.caxpy_sub(lik.real(), lik.imag(), v.row_re(k), v.row_im(k), ri, ii, n);
    }
    const cplx inv = 1.0 / l(i, i);
    kern.cscale(inv.real(), inv.imag(), ri, ii, n);
    kern.accumulate_norm2(ri, ii, acc.data(), n);
  }
  return acc;
}

double bergman_integral(const SectionSpace& space, const QuadratureGrid& grid) {
  std::vector<double> b = bergman_on_grid(space, grid);
  for (std::size_t p = 0; p < grid.size(); ++p) b[p] *= metric_density(space.chart(), grid.nodes[p]);
  return grid.integrate(b);
}

}  // namespace bergman::manifold
