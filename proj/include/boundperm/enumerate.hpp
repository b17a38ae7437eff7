#pragma once

// Backtracking enumeration of k-bounded permutations. This is the ground
// truth the other engines are checked against, so pruning can be switched
// off for differential testing.

#include <boundperm/count.hpp>
#include <boundperm/count_table.hpp>
#include <boundperm/permutation.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <future>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

namespace boundperm {

struct EnumerateOptions {
  bool prune = true;
  /// Worker threads for count_brute; 0 means hardware concurrency.
  unsigned threads = 1;
};

struct BruteStats {
  Count count;
  std::uint64_t nodes = 0;  // search-tree nodes visited
};

namespace detail {

class Backtracker {
 public:
  using Visitor = std::function<void(std::span<const Value>)>;

  Backtracker(int k, std::size_t n, const Variant& variant, bool prune)
      : k_(k), n_(static_cast<Value>(n)), prune_(prune), used_(n + 2, false) {
    end_ = variant.last_value(n).value_or(0);
    free_end_ = !variant.last_value(n).has_value();
    path_.reserve(n);
  }

  /// Runs the search below the given prefix; the prefix must be consistent.
  template <class OnComplete>
  void run(std::span<const Value> prefix, OnComplete&& on_complete) {
    for (Value v : prefix) push(v);
    if (!prefix.empty()) descend(on_complete);
    for (std::size_t i = 0; i < prefix.size(); ++i) pop();
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  /// Candidate next values after the current path, ascending.
  std::vector<Value> candidates() const {
    std::vector<Value> out;
    const Value a = path_.back();
    const Value remaining = n_ - static_cast<Value>(path_.size());
    for (Value c = std::max<Value>(1, a - k_); c <= std::min<Value>(n_, a + k_); ++c) {
      if (used_[c]) continue;
      if (!free_end_ && c == end_ && remaining != 1) continue;
      out.push_back(c);
    }
    return out;
  }

  void push(Value v) {
    used_[v] = true;
    path_.push_back(v);
  }
  void pop() {
    used_[path_.back()] = false;
    path_.pop_back();
  }

 private:
  template <class OnComplete>
  void descend(OnComplete& on_complete) {
    ++nodes_;
    if (static_cast<Value>(path_.size()) == n_) {
      if (free_end_ || path_.back() == end_) on_complete(std::span<const Value>(path_));
      return;
    }
    if (prune_ && dead()) return;
    const Value a = path_.back();
    const Value remaining = n_ - static_cast<Value>(path_.size());
    for (Value c = std::max<Value>(1, a - k_); c <= std::min<Value>(n_, a + k_); ++c) {
      if (used_[c]) continue;
      if (!free_end_ && c == end_ && remaining != 1) continue;
      push(c);
      descend(on_complete);
      pop();
    }
  }

  // Necessary conditions for a prefix to be completable.
  bool dead() const {
    const Value a = path_.back();
    const Value remaining = n_ - static_cast<Value>(path_.size());
    // blocked: no unused value within reach of the last entry
    bool any = false;
    for (Value c = std::max<Value>(1, a - k_); c <= std::min<Value>(n_, a + k_) && !any; ++c)
      any = !used_[c] && (free_end_ || c != end_ || remaining == 1);
    if (!any) return true;
    if (remaining < 2) return false;
    // the smallest unused value still needs enough free neighbours
    Value m = 1;
    while (used_[m]) ++m;
    int avail = std::abs(a - m) <= k_ ? 1 : 0;
    for (Value c = std::max<Value>(1, m - k_); c <= std::min<Value>(n_, m + k_); ++c)
      if (c != m && !used_[c]) ++avail;
    const bool may_be_last = free_end_ || m == end_;
    return avail < (may_be_last ? 1 : 2);
  }

  int k_;
  Value n_;
  bool prune_;
  Value end_ = 0;
  bool free_end_ = false;
  std::vector<bool> used_;
  std::vector<Value> path_;
  std::uint64_t nodes_ = 0;
};

inline std::vector<Value> start_values(std::size_t n, const Variant& v) {
  if (auto f = v.first_value(n)) return {*f};
  std::vector<Value> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Value>(i + 1);
  return all;
}

}  // namespace detail

/// Streams every k-bounded permutation of [n] satisfying the variant to
/// visit, in lexicographic order of list notation.
template <class Visit>
void for_each_permutation(GapSpec k, std::size_t n, const Variant& variant, Visit&& visit,
                          const EnumerateOptions& opts = {}) {
  check_variant(variant, n);
  detail::Backtracker bt(k.k(), n, variant, opts.prune);
  const auto last = variant.last_value(n);
  for (Value s : detail::start_values(n, variant)) {
    if (n > 1 && last && s == *last) continue;
    const Value prefix[1] = {s};
    bt.run(std::span<const Value>(prefix), visit);
  }
}

inline std::vector<Permutation> enumerate(GapSpec k, std::size_t n, const Variant& variant,
                                          const EnumerateOptions& opts = {}) {
  std::vector<Permutation> out;
  for_each_permutation(
      k, n, variant,
      [&](std::span<const Value> p) { out.emplace_back(std::vector<Value>(p.begin(), p.end())); },
      opts);
  return out;
}

/// Counts by backtracking without materializing permutations. The tree is
/// split on its first two entries and the parts are summed in a fixed order.
inline BruteStats count_brute_stats(GapSpec k, std::size_t n, const Variant& variant,
                                    const EnumerateOptions& opts = {}) {
  check_variant(variant, n);
  const auto last = variant.last_value(n);

  std::vector<std::vector<Value>> prefixes;
  for (Value s : detail::start_values(n, variant)) {
    if (n > 1 && last && s == *last) continue;
    if (n == 1) {
      prefixes.push_back({s});
      continue;
    }
    detail::Backtracker probe(k.k(), n, variant, false);
    probe.push(s);
    for (Value c : probe.candidates()) prefixes.push_back({s, c});
  }

  auto work = [&](std::size_t begin, std::size_t stride) {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    for (std::size_t i = begin; i < prefixes.size(); i += stride) {
      detail::Backtracker bt(k.k(), n, variant, opts.prune);
      bt.run(std::span<const Value>(prefixes[i]), [&](std::span<const Value>) { ++count; });
      nodes += bt.nodes();
    }
    return std::pair{count, nodes};
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<unsigned>(1, std::min<unsigned>(threads, static_cast<unsigned>(prefixes.size())));

  BruteStats stats;
  stats.count = 0;
  if (threads <= 1) {
    auto [c, nodes] = work(0, 1);
    stats.count = Count(static_cast<unsigned long>(c));
    stats.nodes = nodes + (n > 1 ? prefixes.size() : 0);
    return stats;
  }
  std::vector<std::future<std::pair<std::uint64_t, std::uint64_t>>> parts;
  for (unsigned t = 0; t < threads; ++t) parts.push_back(std::async(std::launch::async, work, t, threads));
  for (auto& f : parts) {
    auto [c, nodes] = f.get();
    stats.count += Count(static_cast<unsigned long>(c));
    stats.nodes += nodes;
  }
  stats.nodes += n > 1 ? prefixes.size() : 0;
  return stats;
}

inline Count count_brute(GapSpec k, std::size_t n, const Variant& variant,
                         const EnumerateOptions& opts = {}) {
  return count_brute_stats(k, n, variant, opts).count;
}

inline CountTable brute_table(GapSpec k, const Variant& variant, std::size_t max_n,
                              const EnumerateOptions& opts = {}) {
  CountTable t(k.k(), variant, Provenance::Brute);
  for (std::size_t n = 1; n <= max_n; ++n) t.push_back(count_brute(k, n, variant, opts));
  return t;
}

struct FghCounts {
  Count f, g, h;
  friend bool operator==(const FghCounts&, const FghCounts&) = default;
};

/// F, G and H for k = 3 by filtered enumeration:
/// F counts anchored permutations, G those with pi(1) in {1,2} and pi(n) = n,
/// H those with pi(1) = 3 and pi(n) = n that do not begin 3,1,4,2,5.
inline FghCounts count_classes_fgh(std::size_t n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const GapSpec k3(3);
  const auto nv = static_cast<Value>(n);
  FghCounts out{count_brute(k3, n, Variant::anchored()), 0, 0};

  out.g = out.f;
  if (n >= 3) out.g += count_brute(k3, n, Variant::endpoints(2, nv));

  if (n >= 4) {
    std::uint64_t h = 0;
    constexpr Value joker[5] = {3, 1, 4, 2, 5};
    for_each_permutation(k3, n, Variant::endpoints(3, nv), [&](std::span<const Value> p) {
      if (p.size() >= 5 && std::equal(joker, joker + 5, p.begin())) return;
      ++h;
    });
    out.h = static_cast<unsigned long>(h);
  }
  return out;
}

}  // namespace boundperm
