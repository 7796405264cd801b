#include "bergman/scaling/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/numerics/quadrature.hpp"

namespace bergman::scaling {

namespace {

constexpr int kGridRadii = 64;
constexpr int kGridAngles = 64;

cplx at_scale(const ScalingContext& ctx, cplx z) { return z / std::sqrt(double(ctx.k())); }

double deviation_at(const ScalingContext& ctx, cplx z, int order) {
  const cplx w = at_scale(ctx, z);
  const cplx pt[1] = {w};
  const double k = ctx.k();
  if (order == 0) return std::abs(k * (ctx.weight()(pt) - ctx.model_weight(w)));
  const geometry::RealJet jet = ctx.weight().real_jet(pt);
  if (order == 1) {
    const Eigen::Vector2d d = jet.grad - ctx.model_gradient(w);
    return std::sqrt(k) * d.cwiseAbs().maxCoeff();
  }
  return (jet.hess - ctx.model_real_hessian()).cwiseAbs().maxCoeff();
}

model::MultiIndexForm dilate(const model::MultiIndexForm& alpha, double s) {
  model::MultiIndexForm out(alpha.n(), alpha.q());
  for (const auto& [idx, f] : alpha.components()) out.set(idx, f.dilate(s));
  return out;
}

}  // namespace

double scaling_radius(int k) {
  if (k < 2) throw DomainError("scaling radius needs k >= 2");
  return std::log(double(k)) / std::sqrt(double(k));
}

ScalingContext::ScalingContext(geometry::Weight weight, int k)
    : weight_(std::move(weight)), k_(k), radius_(scaling_radius(k)),
      scaled_radius_(std::log(double(k))) {
  if (weight_.dim() != 1) throw DomainError("scaling is implemented on C only");
  const cplx origin[1] = {0.0};
  const geometry::RealJet jet = weight_.real_jet(origin);
  const double tol = 1e-10 * std::max(1.0, jet.hess.cwiseAbs().maxCoeff());
  if (std::abs(jet.value) > tol || jet.grad.cwiseAbs().maxCoeff() > tol) {
    throw DomainError("weight must vanish to first order at the center");
  }
  q_ = jet.hess;
  h_ = 0.25 * (q_(0, 0) + q_(1, 1));
  p_ = cplx(0.25 * (q_(0, 0) - q_(1, 1)), -0.5 * q_(0, 1));
}

double ScalingContext::model_weight(cplx z) const {
  double v = h_ * std::norm(z);
  if (p_ != 0.0) v += std::real(p_ * z * z);
  return v;
}

Eigen::Vector2d ScalingContext::model_gradient(cplx z) const {
  return q_ * Eigen::Vector2d(z.real(), z.imag());
}

double scaled_weight(const ScalingContext& ctx, cplx z) {
  if (std::abs(z) > ctx.scaled_radius()) {
    throw DomainError("point lies outside the scaled ball |z| <= ln k");
  }
  const cplx w[1] = {at_scale(ctx, z)};
  return ctx.k() * ctx.weight()(w);
}

double weight_deviation(const ScalingContext& ctx, int order) {
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
  const double r_max = ctx.scaled_radius();
  double sup = 0.0;
  for (int j = 0; j < kGridAngles; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / kGridAngles;
    const cplx dir = std::polar(1.0, theta);
    for (int i = 0; i < kGridRadii; ++i) {
      sup = std::max(sup, deviation_at(ctx, (r_max * i / kGridRadii) * dir, order));
    }
    sup = std::max(sup, deviation_at(ctx, r_max * dir, order));
  }
  return sup;
}

double norm_localization_ratio(const Section& alpha, const ScalingContext& ctx, int radial,
                               int angular) {
  const auto small = numerics::disc_quadrature(radial, angular, ctx.radius());
  const auto large = numerics::disc_quadrature(radial, angular, ctx.scaled_radius());
  const double k = ctx.k();
  double num = 0.0;
  for (std::size_t p = 0; p < small.size(); ++p) {
    const cplx w = small.nodes[p];
    const cplx pt[1] = {w};
    num += small.weights[p] * std::norm(alpha(w)) * std::exp(-k * ctx.weight()(pt));
  }
  double den = 0.0;
  for (std::size_t p = 0; p < large.size(); ++p) {
    const cplx z = large.nodes[p];
    den += large.weights[p] * std::norm(alpha(at_scale(ctx, z))) *
           std::exp(-ctx.model_weight(z));
  }
  den /= k;
  if (!(den > 0.0)) throw DegenerateSectionError("section vanishes on the scaled ball");
  return num / den;
}

double scaled_laplacian_residual(const model::ModelWeight& w, const model::MultiIndexForm& alpha,
                                 int k) {
  if (k < 1) throw DomainError("k must be positive");
  if (alpha.n() != w.n()) throw DomainError("form and weight dimensions differ");
  const double s = 1.0 / std::sqrt(double(k));
  std::vector<double> big = w.lambda();
  for (double& l : big) l *= k;
  const auto lhs = model::model_laplacian_apply(w, dilate(alpha, s));
  const auto rhs = dilate(model::model_laplacian_apply(model::ModelWeight(big), alpha), s);
  double worst = 0.0;
  for (const auto& idx : model::multi_indices(alpha.n(), alpha.q())) {
    const model::Polynomial diff = lhs.component(idx) - rhs.component(idx) * (1.0 / k);
    worst = std::max(worst, diff.max_abs_coeff());
  }
  return worst;
}

}  // namespace bergman::scaling
