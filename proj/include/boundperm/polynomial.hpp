#pragma once

// Dense univariate polynomials with exact integer coefficients, ascending
// degree. Exact division goes through the rationals; gcd uses a primitive
// pseudo-remainder sequence.

#include <boundperm/count.hpp>
#include <boundperm/errors.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace boundperm {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Count> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }

  /// Coefficient of x^i (zero beyond the degree).
  Count operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Count(0); }
  const std::vector<Count>& coefficients() const noexcept { return c_; }

  /// Ascending coefficient list with explicit zeros, at least one entry.
  std::vector<Count> dense() const { return c_.empty() ? std::vector<Count>{Count(0)} : c_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Count> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Count> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Count> r(a.c_.size() + b.c_.size() - 1, Count(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Count& s, const Polynomial& p) {
    std::vector<Count> r(p.c_);
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// gcd of the coefficients (nonnegative; zero for the zero polynomial).
  Count content() const {
    Count g = 0;
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
  }

  /// Truncation to terms of degree <= d.
  Polynomial truncated(int d) const {
    if (d < 0) return {};
    std::vector<Count> r(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), d + 1));
    return Polynomial(std::move(r));
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Count mag = abs(c_[i]);
      if (s.empty())
        s += c_[i] < 0 ? "-" : "";
      else
        s += c_[i] < 0 ? " - " : " + ";
      if (mag != 1 || i == 0) s += mag.get_str();
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Count> c_;
};

namespace detail {

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly to_q(const Polynomial& p) {
  QPoly q;
  for (const auto& v : p.coefficients()) q.emplace_back(v);
  return q;
}

// Remainder of a by b over Q; b nonzero.
inline QPoly q_rem(QPoly a, const QPoly& b, QPoly* quotient = nullptr) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (quotient) quotient->assign(a.size() >= b.size() ? a.size() - db : 0, mpq_class(0));
  while (a.size() >= b.size()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    if (quotient) (*quotient)[shift] = f;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline std::vector<Count> primitive(std::vector<Count> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  Count g = 0;
  for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return p;
}

// Pseudo-remainder of a by b (b nonzero), reduced to its primitive part.
inline std::vector<Count> primitive_prem(std::vector<Count> a, const std::vector<Count>& b) {
  const Count& lb = b.back();
  while (a.size() >= b.size()) {
    const Count la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& v : a) v *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= la * b[i];
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return primitive(std::move(a));
}

}  // namespace detail

/// Greatest common divisor over Q, returned as a primitive integer
/// polynomial with positive leading coefficient (primitive PRS).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  std::vector<Count> x = detail::primitive(a.coefficients());
  std::vector<Count> y = detail::primitive(b.coefficients());
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    std::vector<Count> r = detail::primitive_prem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  Polynomial g(std::move(x));
  if (!g.is_zero() && g.coefficients().back() < 0) g = Count(-1) * g;
  return g;
}

/// a / b when b divides a exactly over Z; throws otherwise.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
  detail::QPoly q;
  detail::QPoly r = detail::q_rem(detail::to_q(a), detail::to_q(b), &q);
  if (!r.empty()) throw PreconditionError("polynomial division is not exact");
  std::vector<Count> out;
  for (auto& v : q) {
    if (v.get_den() != 1) throw PreconditionError("quotient has non-integer coefficients");
    out.push_back(v.get_num());
  }
  return Polynomial(std::move(out));
}

}  // namespace boundperm
