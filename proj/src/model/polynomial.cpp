#include "bergman/model/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman::model {

int Monomial::degree() const {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += a[i] + b[i];
  return d;
}

Polynomial::Polynomial(int n, int budget) : n_(n), budget_(budget) {
  if (n < 1 || n > kMaxVars) {
    throw CapacityError("polynomials support 1 to " + std::to_string(kMaxVars) +
                        " variables, got " + std::to_string(n));
  }
  if (budget < 0) throw DomainError("degree budget must be nonnegative");
}

Polynomial Polynomial::constant(int n, cplx c, int budget) {
  Polynomial p(n, budget);
  p.add(Monomial{}, c);
  return p;
}

Polynomial Polynomial::term(int n, const Monomial& m, cplx c, int budget) {
  Polynomial p(n, budget);
  p.add(m, c);
  return p;
}

Polynomial Polynomial::z(int n, int i, int budget) {
  Polynomial p(n, budget);
  p.check_axis(i);
  Monomial m;
  m.a[i] = 1;
  p.add(m, 1.0);
  return p;
}

Polynomial Polynomial::zbar(int n, int i, int budget) {
  Polynomial p(n, budget);
  p.check_axis(i);
  Monomial m;
  m.b[i] = 1;
  p.add(m, 1.0);
  return p;
}

void Polynomial::check_axis(int i) const {
  if (i < 0 || i >= n_) {
    throw DomainError("axis " + std::to_string(i + 1) + " out of range for n = " +
                      std::to_string(n_));
  }
}

void Polynomial::check_budget(const Monomial& m) const {
  if (m.degree() > budget_) {
    throw CapacityError("polynomial degree " + std::to_string(m.degree()) +
                        " exceeds the budget " + std::to_string(budget_));
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

double Polynomial::max_abs_coeff() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

bool Polynomial::is_holomorphic() const {
  for (const auto& [m, c] : terms_) {
    for (int i = 0; i < kMaxVars; ++i) {
      if (m.b[i] != 0) return false;
    }
  }
  return true;
}

void Polynomial::add(const Monomial& m, cplx c) {
  if (c == cplx(0.0)) return;
  for (int i = n_; i < kMaxVars; ++i) {
    if (m.a[i] != 0 || m.b[i] != 0) throw DomainError("monomial uses a variable beyond n");
  }
  check_budget(m);
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

cplx Polynomial::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw DomainError("polynomial variable counts differ");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.n_ != n_) throw DomainError("polynomial variable counts differ");
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = (it->second == cplx(0.0)) ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.n_ != q.n_) throw DomainError("polynomial variable counts differ");
  Polynomial r(p.n_, std::min(p.budget_, q.budget_));
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      Monomial m;
      for (int i = 0; i < kMaxVars; ++i) {
        m.a[i] = mp.a[i] + mq.a[i];
        m.b[i] = mp.b[i] + mq.b[i];
      }
      r.add(m, cp * cq);
    }
  }
  return r;
}

Polynomial Polynomial::dz(int i) const {
  check_axis(i);
  Polynomial r(n_, budget_);
  for (const auto& [m, c] : terms_) {
    if (m.a[i] == 0) continue;
    Monomial d = m;
    --d.a[i];
    r.add(d, c * static_cast<double>(m.a[i]));
  }
  return r;
}

Polynomial Polynomial::dzbar(int i) const {
  check_axis(i);
  Polynomial r(n_, budget_);
  for (const auto& [m, c] : terms_) {
    if (m.b[i] == 0) continue;
    Monomial d = m;
    --d.b[i];
    r.add(d, c * static_cast<double>(m.b[i]));
  }
  return r;
}

Polynomial Polynomial::times_z(int i) const {
  check_axis(i);
  Polynomial r(n_, budget_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    ++d.a[i];
    r.add(d, c);
  }
  return r;
}

Polynomial Polynomial::times_zbar(int i) const {
  check_axis(i);
  Polynomial r(n_, budget_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    ++d.b[i];
    r.add(d, c);
  }
  return r;
}

Polynomial Polynomial::dilate(double s) const {
  Polynomial r(n_, budget_);
  for (const auto& [m, c] : terms_) r.add(m, c * std::pow(s, m.degree()));
  return r;
}

cplx Polynomial::eval(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) < n_) throw DomainError("evaluation point has too few coordinates");
  cplx s = 0.0;
  for (const auto& [m, c] : terms_) {
    cplx t = c;
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < m.a[i]; ++k) t *= z[i];
      for (int k = 0; k < m.b[i]; ++k) t *= std::conj(z[i]);
    }
    s += t;
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    for (int i = 0; i < n_; ++i) {
      if (m.a[i]) os << "*z" << i + 1 << (m.a[i] > 1 ? "^" + std::to_string(m.a[i]) : "");
      if (m.b[i]) os << "*zb" << i + 1 << (m.b[i] > 1 ? "^" + std::to_string(m.b[i]) : "");
    }
  }
  return os.str();
}

Polynomial random_polynomial(int n, int max_degree, int term_count, std::mt19937_64& rng,
                             int budget) {
  Polynomial p(n, budget);
  std::uniform_int_distribution<int> coef(-16, 16);
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (int t = 0; t < term_count; ++t) {
    Monomial m;
    int left = deg(rng);
    for (int i = 0; i < n && left > 0; ++i) {
      std::uniform_int_distribution<int> pick(0, left);
      m.a[i] = pick(rng);
      left -= m.a[i];
      std::uniform_int_distribution<int> pick_b(0, left);
      m.b[i] = pick_b(rng);
      left -= m.b[i];
    }
    p.add(m, cplx(coef(rng) / 8.0, coef(rng) / 8.0));
  }
  return p;
}

}  // namespace bergman::model
