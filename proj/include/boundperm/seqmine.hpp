#pragma once

// Exact discovery of linear recurrences and rational generating functions
// from integer sequences.
//
// A fit of order r with transient t means
//   a_n = c_1 a_{n-1} + ... + c_r a_{n-r}   for every t+r+1 <= n <= N,
// and it only counts when it is checked by at least r + kFitMargin
// equations. Orders are tried in ascending order. For order r the largest
// admissible transient is tried, since a fit from an earlier start is also a
// fit from a later one; whether the tail admits any recurrence of order <= r
// is decided with exact rational Berlekamp-Massey, whose linear complexity
// is a proof of minimality for that tail.

#include <boundperm/closed_form.hpp>
#include <boundperm/count.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/frontier_dp.hpp>
#include <boundperm/polynomial.hpp>

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace boundperm {

/// Extra equations beyond the unknown count a fit must satisfy.
inline constexpr std::size_t kFitMargin = 4;

struct InsufficientData {
  std::size_t have = 0;
  std::size_t need = 0;
};

struct NoRecurrence {};

/// find_recurrence outcome: a recurrence, proof that none of order <=
/// max_order fits, or a refusal because the data is too short.
using MineResult = std::variant<Recurrence, NoRecurrence, InsufficientData>;

namespace detail {

// Berlekamp-Massey over Q, carried out on primitive integer polynomials:
// a connection polynomial is only meaningful up to scale, so every update
// C <- b*C - d*x^m*B is followed by removal of the content. The state can be
// resumed, which lets callers ask "is the linear complexity still <= r?"
// for increasing r without redoing earlier steps.
class IntegerBm {
 public:
  explicit IntegerBm(std::span<const Count> s) : s_(s) {}

  /// Processes terms until the end or until the complexity exceeds limit.
  void run(std::size_t limit = static_cast<std::size_t>(-1)) {
    for (; n_ < s_.size(); ++n_) {
      if (len_ > limit) return;
      Count d = 0;
      for (std::size_t i = 0; i <= len_ && i < c_.size(); ++i) d += c_[i] * s_[n_ - i];
      if (d == 0) {
        ++m_;
        continue;
      }
      std::vector<Count> next(std::max(c_.size(), b_.size() + m_), Count(0));
      for (std::size_t i = 0; i < c_.size(); ++i) next[i] = bd_ * c_[i];
      for (std::size_t i = 0; i < b_.size(); ++i) next[i + m_] -= d * b_[i];
      make_primitive(next);
      if (2 * len_ <= n_) {
        len_ = n_ + 1 - len_;
        b_ = std::move(c_);
        bd_ = std::move(d);
        m_ = 1;
      } else {
        ++m_;
      }
      c_ = std::move(next);
    }
  }

  bool done() const noexcept { return n_ >= s_.size(); }
  std::size_t length() const noexcept { return len_; }

  /// Connection polynomial scaled so C_0 = 1 (trailing zeros removed).
  std::vector<mpq_class> connection() const {
    std::vector<mpq_class> out;
    for (const auto& v : c_) out.emplace_back(v, c_[0]);
    for (auto& v : out) v.canonicalize();
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
  }

 private:
  static void make_primitive(std::vector<Count>& p) {
    Count g = 0;
    for (const auto& v : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g > 1)
      for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }

  std::span<const Count> s_;
  std::vector<Count> c_{Count(1)}, b_{Count(1)};
  Count bd_ = 1;
  std::size_t len_ = 0, m_ = 1, n_ = 0;
};

struct LfsrResult {
  std::vector<mpq_class> connection;  // C_0 = 1; a_n = -sum C_i a_{n-i} for n >= length
  std::size_t length = 0;             // linear complexity
};

inline LfsrResult berlekamp_massey(std::span<const Count> s) {
  IntegerBm bm(s);
  bm.run();
  return {bm.connection(), bm.length()};
}

inline bool fits_from(std::span<const Count> a, const std::vector<Count>& coeffs, std::size_t start) {
  // start is a 1-based index: check a_n for n >= start
  const std::size_t r = coeffs.size();
  for (std::size_t n = start; n <= a.size(); ++n) {
    if (n <= r) return false;
    Count v = 0;
    for (std::size_t j = 1; j <= r; ++j) v += coeffs[j - 1] * a[n - j - 1];
    if (v != a[n - 1]) return false;
  }
  return true;
}

}  // namespace detail

/// Solves the recurrence system of the given order and transient with exact
/// rational Gaussian elimination over every available equation. Returns a
/// solution (free unknowns set to zero) when the system is consistent.
/// Independent of the Berlekamp-Massey path; used to cross-check it.
inline std::optional<std::vector<mpq_class>> hankel_fit(std::span<const Count> a, std::size_t order,
                                                        std::size_t transient) {
  const std::size_t r = order;
  if (r == 0 || a.size() < transient + r + 1) return std::nullopt;
  // rows n = transient+r+1 .. N (1-based): sum_j c_j a_{n-j} = a_n
  std::vector<std::vector<mpq_class>> m;
  for (std::size_t n = transient + r + 1; n <= a.size(); ++n) {
    std::vector<mpq_class> row(r + 1);
    for (std::size_t j = 1; j <= r; ++j) row[j - 1] = a[n - j - 1];
    row[r] = a[n - 1];
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col <= r && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    if (col == r) return std::nullopt;  // inconsistent
    std::swap(m[p], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const mpq_class f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j <= r; ++j) m[i][j] -= f * m[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<mpq_class> c(r);
  for (std::size_t i = 0; i < rank; ++i) c[pivot_col[i]] = m[i][r] / m[i][pivot_col[i]];
  return c;
}

/// Minimal-order recurrence fitting terms (a_1, a_2, ...) after a transient
/// of at most max_order terms.
inline MineResult find_recurrence(std::span<const Count> terms, std::size_t max_order) {
  if (max_order < 1) throw PreconditionError("max_order must be >= 1");
  const std::size_t n = terms.size();
  const std::size_t need = 2 * max_order + kFitMargin;
  if (n < need) return InsufficientData{n, need};

  std::map<std::size_t, detail::IntegerBm> by_start;
  for (std::size_t r = 1; r <= max_order; ++r) {
    // largest transient leaving r + margin equations
    if (n < 2 * r + kFitMargin) break;
    const std::size_t t = std::min(max_order, n - 2 * r - kFitMargin);
    auto it = by_start.try_emplace(t, terms.subspan(t)).first;
    auto& bm = it->second;
    bm.run(r);
    if (bm.length() > r) continue;
    const auto connection = bm.connection();

    std::vector<Count> coeffs(r, Count(0));
    if (connection.size() == 1) {
      // tail is identically zero
      coeffs.assign(1, Count(1));
      if (r != 1) continue;
    } else {
      if (connection.size() - 1 != r) continue;  // lower degree would have been found earlier
      for (std::size_t j = 1; j <= r; ++j) {
        const mpq_class c = -connection[j];
        if (c.get_den() != 1) return NoRecurrence{};
        coeffs[j - 1] = c.get_num();
      }
    }
    // walk the start back as far as the recurrence keeps holding
    std::size_t start = t + r + 1;
    while (start > r + 1 && detail::fits_from(terms, coeffs, start - 1)) --start;
    if (!detail::fits_from(terms, coeffs, start)) continue;
    std::vector<Count> init(terms.begin(), terms.begin() + static_cast<long>(start - 1));
    return Recurrence(std::move(coeffs), std::move(init), static_cast<long>(start));
  }
  return NoRecurrence{};
}

inline MineResult find_recurrence(const std::vector<Count>& terms, std::size_t max_order) {
  return find_recurrence(std::span<const Count>(terms), max_order);
}

/// Generating function sum_{n>=1} a_n x^n for a sequence obeying rec.
/// Throws if the recurrence does not actually fit the terms.
inline RationalGF to_gf(const Recurrence& rec, std::span<const Count> terms) {
  std::vector<Count> d{Count(1)};
  for (const auto& c : rec.coefficients) d.push_back(-c);
  const Polynomial den(d);

  const std::size_t top = static_cast<std::size_t>(rec.valid_from) - 1;  // numerator degree bound
  auto series_coeff = [&](std::size_t deg) {
    Count v = 0;
    for (std::size_t j = 0; j < d.size() && j < deg; ++j) {
      const std::size_t idx = deg - j;  // a_idx, 1-based
      if (idx >= 1 && idx <= terms.size()) v += d[j] * terms[idx - 1];
    }
    return v;
  };
  for (std::size_t deg = top + 1; deg <= terms.size(); ++deg)
    if (series_coeff(deg) != 0)
      throw PreconditionError("recurrence does not fit the terms at n=" + std::to_string(deg));
  std::vector<Count> num(top + 1, Count(0));
  for (std::size_t deg = 1; deg <= top && deg <= terms.size(); ++deg) num[deg] = series_coeff(deg);
  return RationalGF(Polynomial(std::move(num)), den);
}

inline RationalGF to_gf(const Recurrence& rec, const std::vector<Count>& terms) {
  return to_gf(rec, std::span<const Count>(terms));
}

/// Outcome of mining a DP-generated table. This is numerical evidence for
/// rationality of the generating function, not a proof.
struct ProbeReport {
  int k = 0;
  std::size_t terms = 0;
  std::size_t holdout = 0;
  std::size_t max_order = 0;
  std::optional<Recurrence> recurrence;
  std::optional<RationalGF> gf;
  bool holdout_match = false;
  std::size_t state_space = 0;
};

/// Mines a recurrence from the first terms_n DP terms and checks its
/// predictions against the next holdout terms. max_order = 0 picks the
/// largest order the data can support. Throws InsufficientData-flavoured
/// PreconditionError when terms_n is too short for max_order.
inline ProbeReport conjecture_probe(GapSpec k, std::size_t terms_n, std::size_t holdout,
                                    std::size_t max_order = 0,
                                    const Variant& variant = Variant::anchored()) {
  if (terms_n < 2 * 1 + kFitMargin)
    throw PreconditionError("insufficient data: need at least " + std::to_string(2 + kFitMargin) + " terms");
  if (max_order == 0) max_order = (terms_n - kFitMargin) / 2;

  ProbeReport report;
  report.k = k.k();
  report.terms = terms_n;
  report.holdout = holdout;
  report.max_order = max_order;
  report.state_space = state_space_size(k);

  const CountTable table = term_table(k, variant, terms_n + holdout);
  const std::vector<Count>& all = table.terms();
  const std::vector<Count> train(all.begin(), all.begin() + static_cast<long>(terms_n));

  const MineResult mined = find_recurrence(train, max_order);
  if (const auto* bad = std::get_if<InsufficientData>(&mined))
    throw PreconditionError("insufficient data: have " + std::to_string(bad->have) + " terms, need " +
                            std::to_string(bad->need));
  if (const auto* rec = std::get_if<Recurrence>(&mined)) {
    report.recurrence = *rec;
    report.gf = to_gf(*rec, train);
    const auto predicted = predict(*rec, train, holdout);
    report.holdout_match = std::equal(predicted.begin(), predicted.end(), all.begin() + static_cast<long>(terms_n));
  }
  return report;
}

}  // namespace boundperm
