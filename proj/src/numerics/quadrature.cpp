#include "bergman/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "bergman/errors.hpp"
#include "bergman/simd/kernels.hpp"

namespace bergman::numerics {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_counts(int radial, int angular) {
  if (radial < 4 || angular < 4) {
    throw CapacityError("quadrature needs at least 4 radial and 4 angular nodes, got " +
                        std::to_string(radial) + " x " + std::to_string(angular));
  }
}

// Legendre P_n and derivative at x.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Builds a 1-D ring grid from radial nodes r_i and radial weights w_i
// (already including the Jacobian), times an equispaced angular rule.
QuadratureGrid ring_grid(const std::vector<double>& r, const std::vector<double>& w, int angular,
                         Domain domain) {
  QuadratureGrid g;
  g.dim = 1;
  g.radial_count = static_cast<int>(r.size());
  g.angular_count = angular;
  g.domain = domain;
  g.nodes.reserve(r.size() * angular);
  g.weights.reserve(r.size() * angular);
  const double dtheta = kTwoPi / angular;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (int m = 0; m < angular; ++m) {
      g.nodes.push_back(std::polar(r[i], dtheta * m));
      g.weights.push_back(w[i] * dtheta);
    }
  }
  return g;
}

Rule1D composite_legendre(int per_interval, double a, double b, std::span<const double> cuts) {
  std::vector<double> edges{a};
  for (double c : cuts) {
    if (c > a && c < b) edges.push_back(c);
  }
  std::sort(edges.begin() + 1, edges.end());
  edges.push_back(b);
  Rule1D out;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const Rule1D part = gauss_legendre(per_interval, edges[s], edges[s + 1]);
    out.x.insert(out.x.end(), part.x.begin(), part.x.end());
    out.w.insert(out.w.end(), part.w.begin(), part.w.end());
  }
  return out;
}

}  // namespace

double QuadratureGrid::integrate(std::span<const double> samples) const {
  if (samples.size() != weights.size()) {
    throw DomainError("integrate: expected " + std::to_string(weights.size()) + " samples, got " +
                      std::to_string(samples.size()));
  }
  return simd::weighted_sum(weights, samples);
}

Rule1D gauss_legendre(int count, double a, double b) {
  if (count < 1) throw CapacityError("Gauss-Legendre rule needs at least one node");
  Rule1D rule;
  rule.x.resize(count);
  rule.w.resize(count);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(count, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre(count, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = mid - half * x;
    rule.x[count - 1 - i] = mid + half * x;
    rule.w[i] = rule.w[count - 1 - i] = half * w;
  }
  return rule;
}

Rule1D gauss_laguerre_scaled(int count) {
  if (count < 1) throw CapacityError("Gauss-Laguerre rule needs at least one node");
  // Golub-Welsch for the initial nodes, then Newton polish on the scaled
  // recurrence P_j(x) = L_j(x) e^{-x/2}, which stays in range for large x.
  Eigen::VectorXd diag(count), sub(std::max(count - 1, 0));
  for (int j = 0; j < count; ++j) diag[j] = 2.0 * j + 1.0;
  for (int j = 0; j + 1 < count; ++j) sub[j] = j + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Rule1D rule;
  rule.x.resize(count);
  rule.w.resize(count);
  const int n = count;
  auto scaled = [n](double x) {
    // returns P_n, P_{n+1} and dL_n/dx * e^{-x/2}
    double p0 = std::exp(-0.5 * x), p1 = (1.0 - x) * p0;
    if (n == 0) return std::array<double, 3>{p0, p1, 0.0};
    for (int j = 1; j < n; ++j) {
      const double p2 = ((2.0 * j + 1.0 - x) * p1 - j * p0) / (j + 1.0);
      p0 = p1;
      p1 = p2;
    }
    const double pn = p1, pnm1 = p0;
    const double pn1 = ((2.0 * n + 1.0 - x) * pn - n * pnm1) / (n + 1.0);
    const double d = n * (pn - pnm1) / x;
    return std::array<double, 3>{pn, pn1, d};
  };
  for (int i = 0; i < count; ++i) {
    double x = tri.eigenvalues()[i];
    for (int it = 0; it < 50; ++it) {
      const auto v = scaled(x);
      const double dx = v[0] / v[2];
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, x)) break;
    }
    const auto v = scaled(x);
    rule.x[i] = x;
    rule.w[i] = x / ((n + 1.0) * (n + 1.0) * v[1] * v[1]);
  }
  return rule;
}

QuadratureGrid plane_quadrature(int radial_count, int angular_count, const PlaneDecay& decay,
                                int degree_budget) {
  require_counts(radial_count, angular_count);
  const int exact = 2 * radial_count - 1;
  std::vector<double> r(radial_count), w(radial_count);
  if (const auto* proj = std::get_if<ProjectiveDecay>(&decay)) {
    // r^{2j} (1+r^2)^{-p} dA becomes t^j (1-t)^{p-j-2} dt/2 dtheta.
    const int needed = static_cast<int>(std::ceil(proj->exponent)) - 2;
    if (degree_budget >= 0) {
      if (degree_budget > needed) {
        throw CapacityError("projective decay exponent " + std::to_string(proj->exponent) +
                            " does not make r^" + std::to_string(2 * degree_budget) +
                            " integrable");
      }
      if (needed > exact) {
        throw CapacityError("projective grid with " + std::to_string(radial_count) +
                            " radial nodes is exact to degree " + std::to_string(exact) +
                            ", degree " + std::to_string(needed) + " requested");
      }
    }
    const Rule1D gl = gauss_legendre(radial_count, 0.0, 1.0);
    for (int i = 0; i < radial_count; ++i) {
      const double t = gl.x[i], s = 1.0 - t;
      r[i] = std::sqrt(t / s);
      w[i] = 0.5 * gl.w[i] / (s * s);
    }
  } else {
    const double rate = std::get<GaussianDecay>(decay).rate;
    if (!(rate > 0.0)) throw DomainError("Gaussian decay rate must be positive");
    if (degree_budget > exact) {
      throw CapacityError("Gaussian grid with " + std::to_string(radial_count) +
                          " radial nodes is exact to degree " + std::to_string(exact) +
                          ", degree " + std::to_string(degree_budget) + " requested");
    }
    const Rule1D gl = gauss_laguerre_scaled(radial_count);
    for (int i = 0; i < radial_count; ++i) {
      r[i] = std::sqrt(gl.x[i] / rate);
      w[i] = gl.w[i] / (2.0 * rate);
    }
  }
  QuadratureGrid g = ring_grid(r, w, angular_count, PlaneDomain{decay});
  g.radial_degree = exact;
  return g;
}

QuadratureGrid projective_quadrature(int radial_per_interval, int angular_count,
                                     std::span<const double> t_breakpoints) {
  require_counts(radial_per_interval, angular_count);
  const Rule1D rule = composite_legendre(radial_per_interval, 0.0, 1.0, t_breakpoints);
  std::vector<double> r(rule.x.size()), w(rule.x.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double t = rule.x[i], s = 1.0 - t;
    r[i] = std::sqrt(t / s);
    w[i] = 0.5 * rule.w[i] / (s * s);
  }
  QuadratureGrid g = ring_grid(r, w, angular_count, PlaneDomain{ProjectiveDecay{2.0}});
  g.radial_degree = 2 * radial_per_interval - 1;
  return g;
}

QuadratureGrid disc_quadrature(int radial_per_interval, int angular_count, double radius,
                               std::span<const double> breakpoints) {
  require_counts(radial_per_interval, angular_count);
  if (!(radius > 0.0)) throw DomainError("disc radius must be positive");
  const Rule1D rule = composite_legendre(radial_per_interval, 0.0, radius, breakpoints);
  std::vector<double> w(rule.w.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rule.w[i] * rule.x[i];
  QuadratureGrid g = ring_grid(rule.x, w, angular_count, DiscDomain{radius});
  g.radial_degree = 2 * radial_per_interval - 2;
  return g;
}

QuadratureGrid polydisc_quadrature(int dim, int radial_count, int angular_count, double radius) {
  if (dim < 1 || dim > 3) throw CapacityError("polydisc grids support 1 <= n <= 3");
  const QuadratureGrid disc = disc_quadrature(radial_count, angular_count, radius);
  QuadratureGrid g;
  g.dim = dim;
  g.radial_count = radial_count;
  g.angular_count = angular_count;
  g.radial_degree = disc.radial_degree;
  g.domain = PolydiscDomain{radius};
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= disc.size();
  g.nodes.resize(total * dim);
  g.weights.resize(total);
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    double w = 1.0;
    for (int a = dim - 1; a >= 0; --a) {
      const std::size_t idx = rest % disc.size();
      rest /= disc.size();
      g.nodes[p * dim + a] = disc.nodes[idx];
      w *= disc.weights[idx];
    }
    g.weights[p] = w;
  }
  return g;
}

QuadratureGrid ball_quadrature(int dim, int radial_per_interval, int simplex_count,
                               int angular_count, double radius,
                               std::span<const double> breakpoints) {
  if (dim == 1) {
    QuadratureGrid g = disc_quadrature(radial_per_interval, angular_count, radius, breakpoints);
    g.domain = BallDomain{radius};
    return g;
  }
  if (dim != 2) throw CapacityError("ball grids are implemented for n <= 2");
  require_counts(radial_per_interval, angular_count);
  if (simplex_count < 4) throw CapacityError("ball grid needs at least 4 simplex nodes");
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  const Rule1D rr = composite_legendre(radial_per_interval, 0.0, radius, breakpoints);
  const Rule1D ss = gauss_legendre(simplex_count, 0.0, 1.0);
  const double dtheta = kTwoPi / angular_count;
  QuadratureGrid g;
  g.dim = 2;
  g.radial_count = static_cast<int>(rr.x.size());
  g.angular_count = angular_count;
  g.radial_degree = 2 * radial_per_interval - 1;
  g.domain = BallDomain{radius};
  const std::size_t total =
      rr.x.size() * ss.x.size() * static_cast<std::size_t>(angular_count) * angular_count;
  g.nodes.reserve(2 * total);
  g.weights.reserve(total);
  for (std::size_t i = 0; i < rr.x.size(); ++i) {
    const double r = rr.x[i];
    for (std::size_t j = 0; j < ss.x.size(); ++j) {
      const double s = ss.x[j];
      const double w = 0.5 * r * r * r * rr.w[i] * ss.w[j] * dtheta * dtheta;
      for (int a = 0; a < angular_count; ++a) {
        for (int b = 0; b < angular_count; ++b) {
          g.nodes.push_back(std::polar(r * std::sqrt(1.0 - s), dtheta * a));
          g.nodes.push_back(std::polar(r * std::sqrt(s), dtheta * b));
          g.weights.push_back(w);
        }
      }
    }
  }
  return g;
}

}  // namespace bergman::numerics
