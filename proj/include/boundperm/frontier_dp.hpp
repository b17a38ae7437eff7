#pragma once

// Exact counting for arbitrary fixed k by a profile (transfer-matrix) sweep.
//
// A k-bounded permutation of [n] is a Hamiltonian path in the graph on
// {1..n} joining values that differ by at most k. Values are added in
// increasing order; when value v arrives it may take edges back to the
// values v-k..v-1 still in the window, and after that the oldest value can
// receive no more edges. The profile records, for every value in the window,
// its degree in the partial path forest and a label pairing the open ends of
// the same path segment, plus how many path ends have already left the
// window. Anchoring and fixed endpoints become degree targets: the two end
// values must finish with degree 1, every other value with degree 2.

#include <boundperm/count.hpp>
#include <boundperm/count_table.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/permutation.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

namespace boundperm {

/// Largest window the packed profile encoding supports.
inline constexpr int kMaxDpWindow = 8;

struct ProfileSlot {
  std::uint8_t degree = 0;  // edges placed so far: 0, 1 or 2
  std::uint8_t label = 0;   // segment id for open slots (degree < 2), else 0
  friend bool operator==(ProfileSlot, ProfileSlot) = default;
};

/// Interface state between processed and unprocessed values.
class Profile {
 public:
  Profile() = default;

  std::size_t size() const noexcept { return size_; }
  const ProfileSlot& operator[](std::size_t i) const { return slots_[i]; }
  ProfileSlot& operator[](std::size_t i) { return slots_[i]; }
  int exited_ends() const noexcept { return exited_; }
  void set_exited_ends(int e) { exited_ = static_cast<std::uint8_t>(e); }

  void push_back(ProfileSlot s) { slots_[size_++] = s; }
  void pop_front() {
    std::copy(slots_.begin() + 1, slots_.begin() + size_, slots_.begin());
    --size_;
  }

  /// Renumbers segment labels of open slots in first-occurrence order and
  /// clears the label of saturated slots.
  void canonicalize() {
    std::array<std::uint8_t, 64> map{};
    std::uint8_t next = 1;
    for (std::size_t i = 0; i < size_; ++i) {
      auto& s = slots_[i];
      if (s.degree >= 2) {
        s.label = 0;
        continue;
      }
      if (!map[s.label]) map[s.label] = next++;
      s.label = map[s.label];
    }
  }

  /// Packed encoding: 6 bits per slot, then 2 bits of exited ends and
  /// 4 bits of window length in the low bits.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < size_; ++i)
      k = (k << 6) | (static_cast<std::uint64_t>(slots_[i].degree) << 4) | slots_[i].label;
    return (k << 6) | (static_cast<std::uint64_t>(exited_) << 4) | size_;
  }

  static Profile from_key(std::uint64_t key) {
    Profile p;
    p.size_ = static_cast<std::uint8_t>(key & 15);
    p.exited_ = static_cast<std::uint8_t>((key >> 4) & 3);
    key >>= 6;
    for (std::size_t i = p.size_; i-- > 0; key >>= 6)
      p.slots_[i] = {static_cast<std::uint8_t>((key >> 4) & 3), static_cast<std::uint8_t>(key & 15)};
    return p;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.size_ == b.size_ && a.exited_ == b.exited_ &&
           std::equal(a.slots_.begin(), a.slots_.begin() + a.size_, b.slots_.begin());
  }

 private:
  std::array<ProfileSlot, kMaxDpWindow + 1> slots_{};
  std::uint8_t size_ = 0;
  std::uint8_t exited_ = 0;
};

inline Profile canonicalize(Profile p) {
  p.canonicalize();
  return p;
}

namespace detail {

// Final degree requirement of a value: exactly 1, exactly 2, or either (Free).
enum class Target : std::uint8_t { One = 1, Two = 2, Any = 0 };

inline int cap(Target t) { return t == Target::One ? 1 : 2; }

class ProfileSweep {
 public:
  using Map = std::unordered_map<std::uint64_t, Count>;

  explicit ProfileSweep(int k) : k_(k) {
    if (k > kMaxDpWindow)
      throw PreconditionError("profile DP supports k <= " + std::to_string(kMaxDpWindow));
    states_.emplace(Profile{}.key(), Count(1));
  }

  const Map& states() const noexcept { return states_; }

  /// Adds value v (window holds v-k..v-1) as an interior step.
  /// target_of(u) gives the final degree rule of each window value.
  template <class TargetOf>
  void advance(long v, TargetOf&& target_of) {
    Map next;
    for (const auto& [key, count] : states_) {
      const Profile p = Profile::from_key(key);
      for_each_extension(p, v, target_of, [&](Profile q, bool completed) {
        if (completed) return;
        if (static_cast<int>(q.size()) > k_ && !exit_oldest(q, v - static_cast<long>(q.size()) + 1, target_of))
          return;
        q.canonicalize();
        next[q.key()] += count;
      });
    }
    states_ = std::move(next);
  }

  /// Count of complete Hamiltonian paths if v were the last value.
  template <class TargetOf>
  Count finish(long v, TargetOf&& target_of) const {
    Count total = 0;
    for (const auto& [key, count] : states_) {
      const Profile p = Profile::from_key(key);
      for_each_extension(p, v, target_of, [&](const Profile& q, bool completed) {
        if (accepts_final(q, v, completed, target_of)) total += count;
      });
    }
    return total;
  }

 private:
  // Every way of giving v up to cap(target(v)) edges back into the window.
  template <class TargetOf, class Emit>
  static void for_each_extension(const Profile& p, long v, TargetOf& target_of, Emit&& emit) {
    const std::size_t w = p.size();
    const long first = v - static_cast<long>(w);
    const int vcap = cap(target_of(v));
    std::array<int, kMaxDpWindow> open{};
    std::size_t n_open = 0;
    for (std::size_t i = 0; i < w; ++i)
      if (p[i].degree < cap(target_of(first + static_cast<long>(i)))) open[n_open++] = static_cast<int>(i);

    emit_subsets(p, v, vcap, open, n_open, emit);
  }

  template <class Emit>
  static void emit_subsets(const Profile& p, long, int vcap, const std::array<int, kMaxDpWindow>& open,
                           std::size_t n_open, Emit& emit) {
    const std::size_t w = p.size();
    constexpr std::uint8_t kFresh = 63;

    auto with_edges = [&](const int* chosen, std::size_t count) {
      // labels of every segment touched; v starts as its own segment
      Profile q = p;
      q.push_back({0, kFresh});
      std::uint8_t vlabel = kFresh;
      for (std::size_t c = 0; c < count; ++c) {
        auto& us = q[static_cast<std::size_t>(chosen[c])];
        if (us.label == vlabel) return;  // cycle
        const std::uint8_t from = us.label;
        ++us.degree;
        ++q[w].degree;
        for (std::size_t j = 0; j <= w; ++j)
          if (q[j].label == from) q[j].label = vlabel;
      }
      // the merged segment is complete when none of its members is still open
      bool open_end = false;
      for (std::size_t j = 0; j <= w; ++j)
        if (q[j].label == vlabel && q[j].degree < 2) open_end = true;
      for (std::size_t j = 0; j <= w; ++j)
        if (q[j].degree >= 2) q[j].label = 0;
      emit(q, !open_end);
    };

    with_edges(nullptr, 0);
    for (std::size_t a = 0; a < n_open; ++a) {
      const int one[1] = {open[a]};
      with_edges(one, 1);
      if (vcap < 2) continue;
      for (std::size_t b = a + 1; b < n_open; ++b) {
        const int two[2] = {open[a], open[b]};
        with_edges(two, 2);
      }
    }
  }

  // Removes the oldest slot (value u), which can take no further edges.
  template <class TargetOf>
  static bool exit_oldest(Profile& q, long u, TargetOf& target_of) {
    const ProfileSlot s = q[0];
    const Target t = target_of(u);
    if (s.degree == 0) return false;  // isolated value with more values to come
    if (t != Target::Any && s.degree != static_cast<int>(t)) return false;
    if (s.degree == 1) {
      if (q.exited_ends() >= 2) return false;
      bool partner = false;
      for (std::size_t j = 1; j < q.size(); ++j)
        if (q[j].degree < 2 && q[j].label == s.label) partner = true;
      if (!partner) return false;  // segment would be closed off early
      q.set_exited_ends(q.exited_ends() + 1);
    }
    q.pop_front();
    return true;
  }

  template <class TargetOf>
  static bool accepts_final(const Profile& q, long v, bool completed, TargetOf& target_of) {
    const long first = v - static_cast<long>(q.size()) + 1;
    int ends = q.exited_ends();
    std::uint8_t label = 0;
    bool any_open = false;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto& s = q[i];
      const Target t = target_of(first + static_cast<long>(i));
      if (s.degree == 0) return false;
      if (t != Target::Any && s.degree != static_cast<int>(t)) return false;
      if (s.degree == 1) {
        ++ends;
        if (any_open && s.label != label) return false;  // two segments left
        any_open = true;
        label = s.label;
      }
    }
    if (completed) return !any_open && ends == 2;
    return any_open && ends == 2;
  }

  int k_;
  Map states_;
};

inline Target endpoint_target(const Variant& variant, std::size_t n, long u) {
  if (variant.kind == Variant::Kind::Free) return Target::Any;
  const auto s = variant.first_value(n).value();
  const auto e = variant.last_value(n).value();
  return (u == s || u == e) ? Target::One : Target::Two;
}

}  // namespace detail

struct DpStats {
  Count count;
  std::size_t peak_states = 0;
};

/// Exact count of k-bounded permutations of [n] under variant.
inline DpStats count_dp_stats(GapSpec k, std::size_t n, const Variant& variant) {
  check_variant(variant, n);
  if (n == 1) return {Count(1), 1};
  const int window = std::min<long>(k.k(), static_cast<long>(n) - 1);
  detail::ProfileSweep sweep(window);
  auto target = [&](long u) { return detail::endpoint_target(variant, n, u); };
  std::size_t peak = 1;
  for (long v = 1; v < static_cast<long>(n); ++v) {
    sweep.advance(v, target);
    peak = std::max(peak, sweep.states().size());
  }
  Count c = sweep.finish(static_cast<long>(n), target);
  if (variant.kind == Variant::Kind::Free) c *= 2;  // each path read in both directions
  return {std::move(c), peak};
}

inline Count count_dp(GapSpec k, std::size_t n, const Variant& variant) {
  return count_dp_stats(k, n, variant).count;
}

/// Counts for n = 1..max_n. Anchored and Free reuse a single sweep, reading
/// off a completed count at every step.
inline CountTable term_table(GapSpec k, const Variant& variant, std::size_t max_n,
                             std::vector<std::size_t>* peak_states = nullptr) {
  CountTable t(k.k(), variant, Provenance::Dp);
  if (max_n == 0) return t;
  if (variant.kind == Variant::Kind::Endpoints) {
    for (std::size_t n = 1; n <= max_n; ++n) {
      const bool in_range = std::max(variant.start, variant.end) <= static_cast<Value>(n) &&
                            std::min(variant.start, variant.end) >= 1 &&
                            (n == 1 || variant.start != variant.end);
      auto stats = in_range ? count_dp_stats(k, n, variant) : DpStats{Count(0), 0};
      if (peak_states) peak_states->push_back(stats.peak_states);
      t.push_back(std::move(stats.count));
    }
    return t;
  }
  t.push_back(1);
  if (peak_states) peak_states->push_back(1);
  if (max_n == 1) return t;

  const bool free = variant.kind == Variant::Kind::Free;
  const int window = std::min<long>(k.k(), static_cast<long>(max_n) - 1);
  detail::ProfileSweep sweep(window);
  using detail::Target;
  auto interior = [free](long u) { return free ? Target::Any : (u == 1 ? Target::One : Target::Two); };
  std::size_t peak = 1;
  sweep.advance(1, interior);
  for (long v = 2; v <= static_cast<long>(max_n); ++v) {
    auto as_last = [&](long u) { return (!free && u == v) ? Target::One : interior(u); };
    Count c = sweep.finish(v, as_last);
    if (free) c *= 2;
    t.push_back(std::move(c));
    peak = std::max(peak, sweep.states().size());
    if (peak_states) peak_states->push_back(peak);
    if (v < static_cast<long>(max_n)) sweep.advance(v, interior);
  }
  return t;
}

/// Number of distinct canonical profiles reachable in an anchored sweep of
/// unbounded length. The per-step state sets are iterated until one repeats.
inline std::size_t state_space_size(GapSpec k) {
  const int w = k.k();
  detail::ProfileSweep sweep(w);
  using detail::Target;
  auto interior = [](long u) { return u == 1 ? Target::One : Target::Two; };
  std::set<std::uint64_t> all;
  std::set<std::set<std::uint64_t>> seen_steps;
  for (long v = 1;; ++v) {
    sweep.advance(v, interior);
    std::set<std::uint64_t> step;
    for (const auto& kv : sweep.states()) step.insert(kv.first);
    all.insert(step.begin(), step.end());
    if (v > w + 1 && !seen_steps.insert(step).second) break;
  }
  return all.size();
}

}  // namespace boundperm
