#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace bergman::numerics {

using cplx = std::complex<double>;

/// One-dimensional rule: nodes and weights.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

Rule1D gauss_legendre(int count, double a, double b);

/// Gauss-Laguerre rule for weight e^{-x} on [0, inf). The returned weights are
/// pre-multiplied by e^{x_i}, so the rule integrates g(x) directly.
Rule1D gauss_laguerre_scaled(int count);

/// Decay profiles for the whole-plane backends.
struct ProjectiveDecay {
  double exponent = 2.0;  // integrand ~ (1 + r^2)^{-exponent}
};
struct GaussianDecay {
  double rate = 1.0;  // integrand ~ exp(-rate r^2)
};
using PlaneDecay = std::variant<ProjectiveDecay, GaussianDecay>;

struct PlaneDomain {
  PlaneDecay decay;
};
struct DiscDomain {
  double radius;
};
struct PolydiscDomain {
  double radius;
};
struct BallDomain {
  double radius;
};
using Domain = std::variant<PlaneDomain, DiscDomain, PolydiscDomain, BallDomain>;

/// Tensor grid on C^n. Nodes are stored point-major: coordinate a of point p
/// lives at nodes[p * dim + a]. Weights are area (volume) measure weights.
struct QuadratureGrid {
  int dim = 1;
  std::vector<cplx> nodes;
  std::vector<double> weights;
  int radial_count = 0;
  int angular_count = 0;
  int radial_degree = 0;  // largest polynomial degree the radial rule integrates exactly
  Domain domain;

  std::size_t size() const { return weights.size(); }
  std::span<const cplx> point(std::size_t p) const {
    return {nodes.data() + p * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  /// Deterministic weighted sum of samples taken at the grid nodes.
  double integrate(std::span<const double> samples) const;
};

/// Whole-plane grid for n = 1. The radial rule is Gauss-Legendre in
/// t = r^2/(1+r^2) for projective decay and Gauss-Laguerre in u = rate r^2 for
/// Gaussian decay. `degree_budget` is the largest j for which r^{2j} times the
/// decay profile must integrate exactly; -1 means whatever the nodes allow.
QuadratureGrid plane_quadrature(int radial_count, int angular_count, const PlaneDecay& decay,
                                int degree_budget = -1);

/// Whole-plane grid for projective decay with the radial rule split at the
/// given values of t = r^2/(1+r^2) in (0, 1); each piece gets radial_per_interval
/// Gauss-Legendre nodes. Useful when the integrand has kinks on circles.
QuadratureGrid projective_quadrature(int radial_per_interval, int angular_count,
                                     std::span<const double> t_breakpoints = {});

/// Disc |z| <= radius, composite Gauss-Legendre in r split at the given
/// breakpoints (each interval receives radial_per_interval nodes).
QuadratureGrid disc_quadrature(int radial_per_interval, int angular_count, double radius,
                               std::span<const double> breakpoints = {});

/// Polydisc of the given radius in C^n, tensor product of disc grids.
QuadratureGrid polydisc_quadrature(int dim, int radial_count, int angular_count, double radius);

/// Ball |w| <= radius in C^dim for dim = 1 or 2. For dim = 2 the
/// parametrisation is w1 = r sqrt(1-s) e^{i a}, w2 = r sqrt(s) e^{i b}.
QuadratureGrid ball_quadrature(int dim, int radial_per_interval, int simplex_count,
                               int angular_count, double radius,
                               std::span<const double> breakpoints = {});

}  // namespace bergman::numerics
