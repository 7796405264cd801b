#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "bergman/numerics/linalg.hpp"

namespace bergman::geometry {

using cplx = std::complex<double>;
using numerics::HermitianMatrix;
using Point = std::span<const cplx>;

/// Value, gradient and Hessian in the real coordinates (x1, y1, ..., xn, yn).
struct RealJet {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

enum class DerivativeMode { analytic, finite_difference };

/// Local potential phi of a fiber metric, |s|^2 = exp(-phi).
class Weight {
 public:
  using Eval = std::function<double(Point)>;
  using Hessian = std::function<HermitianMatrix(Point)>;
  using Jet = std::function<RealJet(Point)>;

  Weight() = default;
  Weight(int dim, Eval eval, Hessian hessian = {}, Jet jet = {});

  int dim() const { return dim_; }
  double operator()(Point z) const { return eval_(z); }
  DerivativeMode mode() const;

  /// phi_{z_i zbar_j}; analytic when available, otherwise from the real jet.
  HermitianMatrix complex_hessian(Point z) const;
  HermitianMatrix fd_complex_hessian(Point z) const;

  RealJet real_jet(Point z) const;
  RealJet fd_real_jet(Point z) const;

  /// Central-difference step used at z.
  static double fd_step(Point z);

 private:
  int dim_ = 0;
  Eval eval_;
  Hessian hessian_;
  Jet jet_;
};

HermitianMatrix complex_hessian_from_jet(const RealJet& jet, int dim);

/// phi(z) = g(|z|^2) on C, with g and its first two derivatives known.
struct RadialProfile {
  std::function<double(double)> g, dg, d2g;
};

Weight radial_weight(RadialProfile profile);

/// Hermitian metric omega on the chart.
struct BaseMetric {
  std::function<HermitianMatrix(Point)> h;
  std::function<double(Point)> volume_density;

  static BaseMetric euclidean(int dim);
  /// (1 + |z|^2)^{-2} on the affine chart of the projective line, total area pi.
  static BaseMetric fubini_study();
};

enum class ChartKind { projective_line, plane };

/// Weight and metric on a chart. For the projective line `far_weight` is the
/// potential in the coordinate w = 1/z with the trivialisation changed by w^d.
struct ManifoldChart {
  std::string name;
  Weight weight;
  Weight far_weight;
  BaseMetric metric;
  int degree = 0;
  ChartKind kind = ChartKind::plane;
};

}  // namespace bergman::geometry
