#pragma once

// Structure of 2- and 3-bounded anchored permutations.
//
// k = 2: the permutation leaves the diagonal only as isolated swaps
// (i, i+1) for i in a set I whose members are at least 3 apart.
// k = 3: every +3 step out of an anchored prefix starts either the Joker
// (gap word +3,-2,+3,-2,+3) or a cascading pattern
// +3^m, d, -3^m', dbar, +3^m'.

#include <boundperm/enumerate.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/permutation.hpp>

#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace boundperm {

struct K2Decomposition {
  std::set<std::size_t> swaps;  // indices i with pi(i) = i+1
  std::size_t n = 0;

  friend bool operator==(const K2Decomposition&, const K2Decomposition&) = default;
};

/// Throws PreconditionError unless dec.swaps lies in {2..n-2} with gaps >= 3.
inline void check_k2_decomposition(const K2Decomposition& dec) {
  if (dec.n < 1) throw PreconditionError("n must be >= 1");
  std::size_t prev = 0;
  for (std::size_t i : dec.swaps) {
    if (i < 2 || i + 2 > dec.n) throw PreconditionError("swap index outside {2..n-2}");
    if (prev && i - prev < 3) throw PreconditionError("swap indices must differ by at least 3");
    prev = i;
  }
}

inline Permutation reconstruct_k2(const K2Decomposition& dec) {
  check_k2_decomposition(dec);
  std::vector<Value> e(dec.n);
  for (std::size_t i = 1; i <= dec.n; ++i) {
    if (dec.swaps.count(i))
      e[i - 1] = static_cast<Value>(i + 1);
    else if (i >= 2 && dec.swaps.count(i - 1))
      e[i - 1] = static_cast<Value>(i - 1);
    else
      e[i - 1] = static_cast<Value>(i);
  }
  return Permutation(std::move(e));
}

/// The unique swap set of a 2-bounded anchored permutation.
inline K2Decomposition decompose_k2(const Permutation& p) {
  if (!is_anchored(p) || !is_k_bounded(p, GapSpec(2)))
    throw PreconditionError("decompose_k2 needs a 2-bounded anchored permutation");
  K2Decomposition dec{{}, p.size()};
  for (std::size_t i = 1; i <= p.size(); ++i)
    if (p(i) == static_cast<Value>(i + 1)) dec.swaps.insert(i);
  try {
    check_k2_decomposition(dec);
  } catch (const PreconditionError& e) {
    throw LemmaViolation("k=2 structure fails for " + p.str() + ": " + e.what());
  }
  if (reconstruct_k2(dec) != p) throw LemmaViolation("k=2 structure fails for " + p.str());
  return dec;
}

/// Every valid swap set for length n, in lexicographic order.
inline std::vector<K2Decomposition> all_k2_decompositions(std::size_t n) {
  std::vector<K2Decomposition> out;
  K2Decomposition cur{{}, n};
  auto rec = [&](auto& self, std::size_t from) -> void {
    out.push_back(cur);
    for (std::size_t i = from; i + 2 <= n; ++i) {
      cur.swaps.insert(i);
      self(self, i + 3);
      cur.swaps.erase(i);
    }
  };
  rec(rec, 2);
  return out;
}

/// Positions i (1-based) where entries i..i+4 are i+2, i, i+3, i+1, i+4.
inline std::vector<std::size_t> find_joker(const Permutation& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 4 <= p.size(); ++i) {
    const auto v = static_cast<Value>(i);
    if (p(i) == v + 2 && p(i + 1) == v && p(i + 2) == v + 3 && p(i + 3) == v + 1 && p(i + 4) == v + 4)
      out.push_back(i);
  }
  return out;
}

struct JokerDeparture {
  friend bool operator==(JokerDeparture, JokerDeparture) = default;
};

struct CascadingDeparture {
  int m = 1;  // length of the opening +3 run
  int d = 1;  // first small gap, one of -2, -1, +1, +2

  /// Length of the -3 run and of the closing +3 run.
  int m_prime() const noexcept { return d < 0 ? m - 1 : m; }
  /// The second small gap.
  int d_bar() const noexcept { return (d == 1 || d == -2) ? 1 : -1; }

  friend bool operator==(CascadingDeparture, CascadingDeparture) = default;
};

struct NotApplicable {
  friend bool operator==(NotApplicable, NotApplicable) = default;
};

using DepartureClassification = std::variant<JokerDeparture, CascadingDeparture, NotApplicable>;

inline std::vector<int> cascading_gap_word(int m, int d) {
  if (m < 1) throw PreconditionError("cascading run length m must be >= 1");
  if (d != -2 && d != -1 && d != 1 && d != 2) throw PreconditionError("d must be one of -2, -1, +1, +2");
  const CascadingDeparture c{m, d};
  std::vector<int> w(static_cast<std::size_t>(m), 3);
  w.push_back(d);
  w.insert(w.end(), static_cast<std::size_t>(c.m_prime()), -3);
  w.push_back(c.d_bar());
  w.insert(w.end(), static_cast<std::size_t>(c.m_prime()), 3);
  return w;
}

inline constexpr int kJokerGaps[5] = {3, -2, 3, -2, 3};

namespace detail {

inline bool anchored_prefix(const Permutation& p, std::size_t i) {
  if (i < 1 || i > p.size() || p(1) != 1 || p(i) != static_cast<Value>(i)) return false;
  for (std::size_t j = 1; j <= i; ++j)
    if (p(j) > static_cast<Value>(i)) return false;
  return true;
}

}  // namespace detail

/// Classifies the step out of the anchored prefix ending at position i.
/// Only the gaps are inspected.
inline DepartureClassification classify_departure(const Permutation& p, std::size_t i) {
  if (!is_anchored(p) || !is_k_bounded(p, GapSpec(3)))
    throw PreconditionError("classify_departure needs a 3-bounded anchored permutation");
  if (!detail::anchored_prefix(p, i))
    throw PreconditionError("entries 1..i must be a permutation of {1..i} ending at i");
  const auto g = gaps(p);  // g[j-1] is the gap after position j
  if (i >= p.size() || g[i - 1] != 3) return NotApplicable{};

  const auto after = std::vector<int>(g.begin() + static_cast<long>(i - 1), g.end());
  if (after.size() >= 5 && std::equal(kJokerGaps, kJokerGaps + 5, after.begin())) return JokerDeparture{};

  std::size_t m = 0;
  while (m < after.size() && after[m] == 3) ++m;
  if (m == after.size())
    throw LemmaViolation("+3 run reaches the end of " + p.str());
  const int d = after[m];
  if (d != -2 && d != -1 && d != 1 && d != 2)
    throw LemmaViolation("gap " + std::to_string(d) + " after +3 run in " + p.str());
  const auto word = cascading_gap_word(static_cast<int>(m), d);
  if (after.size() < word.size() || !std::equal(word.begin(), word.end(), after.begin()))
    throw LemmaViolation("departure at position " + std::to_string(i) + " of " + p.str() +
                         " is neither the Joker nor a cascading pattern");
  return CascadingDeparture{static_cast<int>(m), d};
}

/// Checks every +3 departure from an anchored prefix of p.
inline bool validate_lemma33(const Permutation& p) {
  if (!is_anchored(p) || !is_k_bounded(p, GapSpec(3)))
    throw PreconditionError("validate_lemma33 needs a 3-bounded anchored permutation");
  Value max_seen = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    max_seen = std::max(max_seen, p(i));
    if (max_seen != static_cast<Value>(i) || p(i) != static_cast<Value>(i)) continue;
    if (p(i + 1) - p(i) != 3) continue;
    try {
      classify_departure(p, i);
    } catch (const LemmaViolation&) {
      return false;
    }
  }
  return true;
}

}  // namespace boundperm
