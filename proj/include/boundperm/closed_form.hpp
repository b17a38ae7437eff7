#pragma once

// Exact counters for k = 1, 2, 3 built from linear recurrences and rational
// generating functions with constant-size state.

#include <boundperm/count.hpp>
#include <boundperm/count_table.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/polynomial.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace boundperm {

/// a_n = sum_{j=1..r} c_j a_{n-j}, guaranteed for n >= valid_from.
/// initial holds a_1..a_s for some s >= r.
struct Recurrence {
  std::vector<Count> coefficients;
  std::vector<Count> initial;
  long valid_from = 0;

  Recurrence() = default;
  Recurrence(std::vector<Count> coeffs, std::vector<Count> init, long from)
      : coefficients(std::move(coeffs)), initial(std::move(init)), valid_from(from) {
    const auto r = coefficients.size();
    if (r == 0) throw PreconditionError("recurrence order must be >= 1");
    if (coefficients.back() == 0) throw PreconditionError("last recurrence coefficient is zero");
    if (initial.size() < r) throw PreconditionError("need at least r initial terms");
    if (valid_from < static_cast<long>(r) + 1) throw PreconditionError("valid_from must be >= r+1");
  }

  std::size_t order() const noexcept { return coefficients.size(); }

  /// a_1..a_count: initial terms, then the recurrence.
  std::vector<Count> terms(std::size_t count) const {
    std::vector<Count> a(initial.begin(), initial.begin() + std::min(count, initial.size()));
    const auto r = order();
    while (a.size() < count) {
      Count next = 0;
      for (std::size_t j = 1; j <= r; ++j) next += coefficients[j - 1] * a[a.size() - j];
      a.push_back(std::move(next));
    }
    return a;
  }

  friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

/// Extends seed by count terms using rec's coefficients on the trailing window.
inline std::vector<Count> predict(const Recurrence& rec, const std::vector<Count>& seed,
                                  std::size_t count) {
  const auto r = rec.order();
  if (seed.size() < r) throw PreconditionError("seed shorter than recurrence order");
  std::vector<Count> a(seed);
  std::vector<Count> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Count next = 0;
    for (std::size_t j = 1; j <= r; ++j) next += rec.coefficients[j - 1] * a[a.size() - j];
    a.push_back(next);
    out.push_back(std::move(next));
  }
  return out;
}

/// numerator / denominator in lowest terms with denominator(0) = 1.
class RationalGF {
 public:
  RationalGF() : num_{}, den_{1} {}

  /// Reduces by the polynomial gcd and scales so the denominator's constant
  /// term is 1. Throws if that scaling is not integral.
  RationalGF(const Polynomial& numerator, const Polynomial& denominator) {
    if (denominator.is_zero() || denominator[0] == 0)
      throw PreconditionError("denominator must have a nonzero constant term");
    if (numerator.is_zero()) {
      den_ = Polynomial{1};
      return;
    }
    const Polynomial g = gcd(numerator, denominator);
    num_ = divide_exact(numerator, g);
    den_ = divide_exact(denominator, g);
    const Count d0 = den_[0];
    if (d0 != 1) {
      if (d0 != -1) throw PreconditionError("reduced denominator(0) is not a unit");
      num_ = Count(-1) * num_;
      den_ = Count(-1) * den_;
    }
  }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

  friend bool operator==(const RationalGF&, const RationalGF&) = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Coefficients of x^1..x^count in the power series of gf.
inline std::vector<Count> expand_gf(const RationalGF& gf, long count) {
  if (count < 1) return {};
  const auto& num = gf.numerator();
  const auto& den = gf.denominator();
  std::vector<Count> a(static_cast<std::size_t>(count) + 1);
  for (long n = 0; n <= count; ++n) {
    Count v = num[n];
    for (long j = 1; j <= den.degree() && j <= n; ++j) v -= den[j] * a[n - j];
    a[n] = std::move(v);
  }
  return {a.begin() + 1, a.end()};
}

/// Only the identity is 1-bounded and anchored.
inline Count count_k1(long n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  return 1;
}

inline const Recurrence& k2_recurrence() {
  static const Recurrence rec({1, 0, 1}, {1, 1, 1}, 4);
  return rec;
}

inline const Recurrence& k3_recurrence() {
  static const Recurrence rec({2, -1, 2, 1, 1, 0, -1, -1}, {1, 1, 1, 2, 6, 14, 28, 56}, 9);
  return rec;
}

/// 2-bounded anchored permutations: 1, 1, 1, then R_n = R_{n-1} + R_{n-3}.
inline Count count_k2(long n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  Count a = 1, b = 1, c = 1;  // R_{n-3}, R_{n-2}, R_{n-1}
  for (long i = 4; i <= n; ++i) {
    Count next = c + a;
    a = std::move(b);
    b = std::move(c);
    c = std::move(next);
  }
  return c;
}

/// 3-bounded anchored permutations via the depth-8 recurrence.
inline Count count_k3(long n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const auto& rec = k3_recurrence();
  if (n <= 8) return rec.initial[n - 1];
  std::array<Count, 8> w;  // w[j] = F_{m-1-j}
  for (int j = 0; j < 8; ++j) w[j] = rec.initial[7 - j];
  for (long m = 9; m <= n; ++m) {
    Count next = 0;
    for (int j = 0; j < 8; ++j) next += rec.coefficients[j] * w[j];
    for (int j = 7; j > 0; --j) w[j] = std::move(w[j - 1]);
    w[0] = std::move(next);
  }
  return w[0];
}

inline CountTable closed_table(int k, long max_n) {
  if (k < 1 || k > 3) throw PreconditionError("closed forms exist for k in {1,2,3} only");
  CountTable t(k, Variant::anchored(), Provenance::ClosedForm);
  if (max_n < 1) return t;
  if (k == 1) {
    for (long n = 1; n <= max_n; ++n) t.push_back(1);
  } else {
    const auto& rec = k == 2 ? k2_recurrence() : k3_recurrence();
    for (auto& v : rec.terms(static_cast<std::size_t>(max_n))) t.push_back(std::move(v));
  }
  return t;
}

struct FghTables {
  CountTable f, g, h;
};

struct FgTables {
  CountTable f, g;
};

namespace detail {

// a_j for the 1-indexed table, zero for j <= 0.
inline Count at(const std::vector<Count>& a, long j) { return j >= 1 ? a[j - 1] : Count(0); }

inline FghTables to_tables(std::vector<Count> f, std::vector<Count> g, std::vector<Count> h) {
  FghTables t{CountTable(3, Variant::anchored(), Provenance::ClosedForm),
              CountTable(3, Variant::anchored(), Provenance::ClosedForm),
              CountTable(3, Variant::anchored(), Provenance::ClosedForm)};
  for (auto& v : f) t.f.push_back(std::move(v));
  for (auto& v : g) t.g.push_back(std::move(v));
  for (auto& v : h) t.h.push_back(std::move(v));
  return t;
}

}  // namespace detail

/// Base values n = 1..5 of (F, G, H), frozen from filtered enumeration
/// (the unit tests re-derive them with count_classes_fgh).
inline constexpr std::array<std::array<long, 3>, 5> kFghSeeds = {{
    {1, 1, 0},
    {1, 1, 0},
    {1, 2, 0},
    {2, 4, 2},
    {6, 10, 3},
}};

/// F, G, H from their three mutual recurrences, valid for n >= 6.
inline FghTables fgh_table(long max_n) {
  if (max_n < 1) throw PreconditionError("max_n must be >= 1");
  std::vector<Count> f, g, h;
  using detail::at;
  for (long n = 1; n <= max_n; ++n) {
    if (n <= 5) {
      f.emplace_back(kFghSeeds[n - 1][0]);
      g.emplace_back(kFghSeeds[n - 1][1]);
      h.emplace_back(kFghSeeds[n - 1][2]);
      continue;
    }
    h.push_back(at(f, n - 3) + at(g, n - 3) + at(f, n - 4) + at(g, n - 5) + at(h, n - 3));
    f.push_back(at(g, n - 1) + at(h, n - 1) + at(f, n - 5));
    g.push_back(at(f, n) + at(g, n - 2) + at(f, n - 3) + at(g, n - 4) + at(h, n - 2));
  }
  return detail::to_tables(std::move(f), std::move(g), std::move(h));
}

/// F and G from the H-free pair of recurrences with F_j = G_j = 0 for j <= 0.
/// Those recurrences give 0 at n = 1, so F_1 = 1 is the single seed.
inline FgTables fg_two_term_table(long max_n) {
  if (max_n < 1) throw PreconditionError("max_n must be >= 1");
  std::vector<Count> f, g;
  using detail::at;
  for (long n = 1; n <= max_n; ++n) {
    if (n == 1)
      f.emplace_back(1);
    else
      f.push_back(at(g, n - 1) + at(f, n - 4) + at(g, n - 2) - at(f, n - 2) + at(f, n - 5));
    g.push_back(at(f, n) + at(g, n - 2) + at(g, n - 3) + at(g, n - 4) + at(f, n - 5));
  }
  FgTables t{CountTable(3, Variant::anchored(), Provenance::ClosedForm),
             CountTable(3, Variant::anchored(), Provenance::ClosedForm)};
  for (auto& v : f) t.f.push_back(std::move(v));
  for (auto& v : g) t.g.push_back(std::move(v));
  return t;
}

/// H_n recovered as F_{n-3} + G_{n-1} - F_{n-1}.
inline Count h_eliminated(long n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (n == 1) return 0;
  const auto t = fgh_table(n - 1);
  auto F = [&](long j) { return j >= 1 ? t.f[j] : Count(0); };
  auto G = [&](long j) { return j >= 1 ? t.g[j] : Count(0); };
  return F(n - 3) + G(n - 1) - F(n - 1);
}

inline RationalGF gf_k2() { return RationalGF(Polynomial{0, 1}, Polynomial{1, -1, 0, -1}); }

inline RationalGF gf_k3() {
  return RationalGF(Polynomial{0, 1, -1, 0, -1}, Polynomial{1, -2, 1, -2, -1, -1, 0, 1, 1});
}

}  // namespace boundperm
