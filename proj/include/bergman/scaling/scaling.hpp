#pragma once

#include <complex>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "bergman/geometry/weight.hpp"
#include "bergman/model/forms.hpp"
#include "bergman/model/model.hpp"

namespace bergman::scaling {

using cplx = std::complex<double>;

/// R_k = ln k / sqrt(k).
double scaling_radius(int k);

/// A weight on C viewed at scale 1/sqrt(k) around the origin. The model
/// weight phi_0 is the quadratic part of phi at 0, split as
/// h |z|^2 + Re(p z^2).
class ScalingContext {
 public:
  /// phi must vanish to first order at 0; k >= 2.
  ScalingContext(geometry::Weight weight, int k);

  int k() const { return k_; }
  double radius() const { return radius_; }
  /// sqrt(k) R_k = ln k, the radius of the scaled ball.
  double scaled_radius() const { return scaled_radius_; }
  const geometry::Weight& weight() const { return weight_; }
  double model_hessian() const { return h_; }
  cplx model_pluriharmonic() const { return p_; }

  double model_weight(cplx z) const;
  /// Real gradient and Hessian of phi_0 in (x, y).
  Eigen::Vector2d model_gradient(cplx z) const;
  const Eigen::Matrix2d& model_real_hessian() const { return q_; }

 private:
  geometry::Weight weight_;
  int k_;
  double radius_, scaled_radius_;
  double h_ = 0.0;
  cplx p_ = 0.0;
  Eigen::Matrix2d q_;
};

/// k phi(z / sqrt(k)); DomainError outside |z| <= ln k.
double scaled_weight(const ScalingContext& ctx, cplx z);

/// Largest partial derivative of order `order` (0, 1 or 2) of
/// (k phi)^(k) - phi_0 over |z| <= ln k, sampled on 64 radii x 64 angles and
/// the boundary circle.
double weight_deviation(const ScalingContext& ctx, int order);

using Section = std::function<cplx(cplx)>;

/// ||alpha||^2 on the ball of radius R_k against e^{-k phi}, divided by
/// k^{-1} ||alpha(. / sqrt k)||^2 on the ball of radius ln k against e^{-phi_0}.
/// Both integrals use disc rules with the given node counts.
double norm_localization_ratio(const Section& alpha, const ScalingContext& ctx,
                               int radial = 64, int angular = 64);

/// Largest coefficient of Delta_lambda(alpha^(k)) - k^{-1} (Delta_{k lambda} alpha)^(k),
/// where alpha^(k)(z) = alpha(z / sqrt k).
double scaled_laplacian_residual(const model::ModelWeight& w, const model::MultiIndexForm& alpha,
                                 int k);

}  // namespace bergman::scaling
