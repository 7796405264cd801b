#pragma once

#include <array>
#include <complex>
#include <compare>
#include <map>
#include <random>
#include <span>
#include <string>

namespace bergman::model {

using cplx = std::complex<double>;

constexpr int kMaxVars = 3;
constexpr int kDefaultBudget = 40;

/// z^a zbar^b in up to three variables.
struct Monomial {
  std::array<int, kMaxVars> a{};
  std::array<int, kMaxVars> b{};
  auto operator<=>(const Monomial&) const = default;
  int degree() const;
};

/// Sparse polynomial in z_1..z_n, zbar_1..zbar_n with complex coefficients.
/// Exact zeros are dropped, so the zero polynomial has no terms.
class Polynomial {
 public:
  explicit Polynomial(int n = 1, int budget = kDefaultBudget);

  static Polynomial constant(int n, cplx c, int budget = kDefaultBudget);
  static Polynomial term(int n, const Monomial& m, cplx c = 1.0, int budget = kDefaultBudget);
  static Polynomial z(int n, int i, int budget = kDefaultBudget);
  static Polynomial zbar(int n, int i, int budget = kDefaultBudget);

  int n() const { return n_; }
  int budget() const { return budget_; }
  const std::map<Monomial, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  double max_abs_coeff() const;
  bool is_holomorphic() const;

  void add(const Monomial& m, cplx c);
  cplx coeff(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(Polynomial p, cplx s) { return p *= s; }
  friend Polynomial operator*(cplx s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

  Polynomial dz(int i) const;
  Polynomial dzbar(int i) const;
  Polynomial times_z(int i) const;
  Polynomial times_zbar(int i) const;
  /// Substitutes z_i -> s z_i and zbar_i -> s zbar_i in every variable.
  Polynomial dilate(double s) const;

  cplx eval(std::span<const cplx> z) const;

  std::string to_string() const;

 private:
  void check_axis(int i) const;
  void check_budget(const Monomial& m) const;

  int n_;
  int budget_;
  std::map<Monomial, cplx> terms_;
};

/// Random polynomial of total degree <= max_degree whose coefficients are
/// small dyadic rationals, so products with dyadic weights stay exact.
Polynomial random_polynomial(int n, int max_degree, int term_count, std::mt19937_64& rng,
                             int budget = kDefaultBudget);

}  // namespace bergman::model
