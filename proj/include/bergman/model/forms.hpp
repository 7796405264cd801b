#pragma once

#include <map>
#include <string>
#include <vector>

#include "bergman/model/polynomial.hpp"

namespace bergman::model {

/// Strictly increasing multi-index I in {1..n}, stored as a bit set (bit i-1).
class MultiIndex {
 public:
  MultiIndex() = default;
  /// From 1-based axis labels; must be strictly increasing.
  static MultiIndex from_labels(const std::vector<int>& labels);
  static MultiIndex from_mask(unsigned mask) { return MultiIndex(mask); }
  static MultiIndex first(int q);  // {1..q}

  unsigned mask() const { return mask_; }
  bool contains(int axis) const { return (mask_ >> axis) & 1u; }  // 0-based axis
  int size() const;
  std::vector<int> labels() const;  // 1-based
  std::string to_string() const;
  auto operator<=>(const MultiIndex&) const = default;

 private:
  explicit MultiIndex(unsigned mask) : mask_(mask) {}
  unsigned mask_ = 0;
};

/// All I with |I| = q in {1..n}, in increasing mask order.
std::vector<MultiIndex> multi_indices(int n, int q);

/// (0,q)-form sum_I f_I dzbar^I with polynomial coefficients.
class MultiIndexForm {
 public:
  MultiIndexForm(int n, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  const std::map<MultiIndex, Polynomial>& components() const { return comps_; }
  const Polynomial& component(MultiIndex idx) const;
  void set(MultiIndex idx, Polynomial f);
  double max_abs_coeff() const;

 private:
  int n_, q_;
  std::map<MultiIndex, Polynomial> comps_;
};

/// Coefficient p(z, zbar) exp(sum_i c_i |z_i|^2).
struct GaussianCoefficient {
  Polynomial p;
  std::vector<double> exponent;
  cplx eval(std::span<const cplx> z) const;
};

struct GaussianForm {
  int n = 1;
  int q = 0;
  std::map<MultiIndex, GaussianCoefficient> components;
};

/// Holomorphic representative F_I in zeta (zeta_i = zbar_i on I, z_i off I),
/// stored with exponents in the a-slots, together with the reduced weights
/// Phi_I = sum_i phi_i |z_i|^2.
struct ReducedComponent {
  Polynomial f;
  std::vector<double> phi;
};

struct ReducedForm {
  int n = 1;
  int q = 0;
  std::map<MultiIndex, ReducedComponent> components;
};

}  // namespace bergman::model
