#include "bergman/model/forms.hpp"

#include <bit>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman::model {

MultiIndex MultiIndex::from_labels(const std::vector<int>& labels) {
  unsigned mask = 0;
  int last = 0;
  for (int l : labels) {
    if (l <= last) throw DomainError("multi-index labels must be strictly increasing and >= 1");
    if (l > kMaxVars) throw CapacityError("multi-index label exceeds the supported dimension");
    mask |= 1u << (l - 1);
    last = l;
  }
  return MultiIndex(mask);
}

MultiIndex MultiIndex::first(int q) { return MultiIndex((1u << q) - 1u); }

int MultiIndex::size() const { return std::popcount(mask_); }

std::vector<int> MultiIndex::labels() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxVars; ++i) {
    if (contains(i)) out.push_back(i + 1);
  }
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int l : labels()) {
    if (!first) s += ",";
    s += std::to_string(l);
    first = false;
  }
  return s + "}";
}

std::vector<MultiIndex> multi_indices(int n, int q) {
  std::vector<MultiIndex> out;
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) == q) out.push_back(MultiIndex::from_mask(m));
  }
  return out;
}

MultiIndexForm::MultiIndexForm(int n, int q) : n_(n), q_(q) {
  if (n < 1 || n > kMaxVars) throw CapacityError("forms support 1 <= n <= 3");
  if (q < 0 || q > n) throw DomainError("form degree must lie in [0, n]");
}

const Polynomial& MultiIndexForm::component(MultiIndex idx) const {
  static const Polynomial zero1(1), zero2(2), zero3(3);
  const auto it = comps_.find(idx);
  if (it != comps_.end()) return it->second;
  return n_ == 1 ? zero1 : (n_ == 2 ? zero2 : zero3);
}

void MultiIndexForm::set(MultiIndex idx, Polynomial f) {
  if (idx.size() != q_) throw DomainError("multi-index " + idx.to_string() + " has wrong length");
  if (idx.mask() >> n_) throw DomainError("multi-index " + idx.to_string() + " exceeds n");
  if (f.n() != n_) throw DomainError("component has the wrong number of variables");
  comps_.insert_or_assign(idx, std::move(f));
}

double MultiIndexForm::max_abs_coeff() const {
  double s = 0.0;
  for (const auto& [i, f] : comps_) s = std::max(s, f.max_abs_coeff());
  return s;
}

cplx GaussianCoefficient::eval(std::span<const cplx> z) const {
  double e = 0.0;
  for (std::size_t i = 0; i < exponent.size(); ++i) e += exponent[i] * std::norm(z[i]);
  return p.eval(z) * std::exp(e);
}

}  // namespace bergman::model
