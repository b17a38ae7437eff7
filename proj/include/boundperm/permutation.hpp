#pragma once

// Core value types: permutations in 1-indexed list notation, the gap bound,
// and the endpoint variants shared by every counting engine.

#include <boundperm/errors.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boundperm {

using Value = std::int32_t;

/// A bijection on {1..n}, stored in list notation. Position i (1-based)
/// holds pi(i).
class Permutation {
 public:
  explicit Permutation(std::vector<Value> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw PreconditionError("permutation must have n >= 1");
    const auto n = entries_.size();
    std::vector<bool> seen(n + 1, false);
    for (Value v : entries_) {
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[v])
        throw PreconditionError("entries are not a bijection on {1..n}");
      seen[v] = true;
    }
  }

  Permutation(std::initializer_list<Value> entries)
      : Permutation(std::vector<Value>(entries)) {}

  static Permutation identity(std::size_t n) {
    std::vector<Value> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<Value>(i + 1);
    return Permutation(std::move(e));
  }

  std::size_t size() const noexcept { return entries_.size(); }

  /// pi(i) for 1 <= i <= n.
  Value operator()(std::size_t i) const { return entries_.at(i - 1); }

  std::span<const Value> entries() const noexcept { return entries_; }

  Permutation reversed() const {
    std::vector<Value> r(entries_.rbegin(), entries_.rend());
    return Permutation(std::move(r));
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(entries_[i]);
    }
    return s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Value> entries_;
};

/// Maximum absolute difference allowed between consecutive entries.
class GapSpec {
 public:
  explicit GapSpec(int k) : k_(k) {
    if (k < 1) throw PreconditionError("gap bound k must be >= 1");
  }
  int k() const noexcept { return k_; }
  friend bool operator==(GapSpec, GapSpec) = default;

 private:
  int k_;
};

/// Which endpoints a counted permutation must have.
struct Variant {
  enum class Kind { Anchored, Endpoints, Free };

  Kind kind = Kind::Anchored;
  Value start = 0;  // meaningful for Endpoints only
  Value end = 0;

  static Variant anchored() { return {}; }
  static Variant free() { return {Kind::Free, 0, 0}; }
  static Variant endpoints(Value s, Value e) { return {Kind::Endpoints, s, e}; }

  /// Forced first value for length n, if any.
  std::optional<Value> first_value(std::size_t /*n*/) const {
    switch (kind) {
      case Kind::Anchored: return Value{1};
      case Kind::Endpoints: return start;
      case Kind::Free: break;
    }
    return std::nullopt;
  }

  /// Forced last value for length n, if any.
  std::optional<Value> last_value(std::size_t n) const {
    switch (kind) {
      case Kind::Anchored: return static_cast<Value>(n);
      case Kind::Endpoints: return end;
      case Kind::Free: break;
    }
    return std::nullopt;
  }

  std::string str() const {
    switch (kind) {
      case Kind::Anchored: return "anchored";
      case Kind::Free: return "free";
      case Kind::Endpoints:
        return "endpoints:" + std::to_string(start) + "," + std::to_string(end);
    }
    return {};
  }

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// Throws PreconditionError when an Endpoints variant is out of range for n.
inline void check_variant(const Variant& v, std::size_t n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (v.kind != Variant::Kind::Endpoints) return;
  const auto in_range = [n](Value x) { return x >= 1 && static_cast<std::size_t>(x) <= n; };
  if (!in_range(v.start) || !in_range(v.end))
    throw PreconditionError("endpoint values out of range for n=" + std::to_string(n));
  if (n > 1 && v.start == v.end) throw PreconditionError("endpoints must differ when n > 1");
}

inline bool is_k_bounded(const Permutation& p, GapSpec k) {
  const auto e = p.entries();
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (std::abs(e[i + 1] - e[i]) > k.k()) return false;
  return true;
}

inline bool is_anchored(const Permutation& p) {
  return p(1) == 1 && p(p.size()) == static_cast<Value>(p.size());
}

/// Whether p satisfies the endpoint constraint of v (no gap check).
inline bool matches_variant(const Permutation& p, const Variant& v) {
  const auto n = p.size();
  if (auto f = v.first_value(n); f && p(1) != *f) return false;
  if (auto l = v.last_value(n); l && p(n) != *l) return false;
  return true;
}

/// Signed consecutive differences pi(i+1) - pi(i); empty for n = 1.
inline std::vector<int> gaps(std::span<const Value> seq) {
  std::vector<int> g;
  if (seq.size() < 2) return g;
  g.reserve(seq.size() - 1);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) g.push_back(seq[i + 1] - seq[i]);
  return g;
}

inline std::vector<int> gaps(const Permutation& p) { return gaps(p.entries()); }

/// True iff the last entry a of prefix has no unused value in
/// {a-k..a+k} \ {a} that lies inside {1..n}.
inline bool is_blocked(std::span<const Value> prefix, GapSpec k, std::size_t n) {
  if (prefix.empty()) throw PreconditionError("is_blocked needs a non-empty prefix");
  std::vector<bool> used(n + 1, false);
  for (Value v : prefix) {
    if (v < 1 || static_cast<std::size_t>(v) > n || used[v])
      throw PreconditionError("prefix values must be distinct and within {1..n}");
    used[v] = true;
  }
  const Value a = prefix.back();
  const Value lo = std::max<Value>(1, a - k.k());
  const Value hi = std::min<Value>(static_cast<Value>(n), a + k.k());
  for (Value c = lo; c <= hi; ++c)
    if (!used[c]) return false;
  return true;
}

}  // namespace boundperm
