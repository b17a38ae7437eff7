#pragma once

#include <boundperm/count.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/permutation.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace boundperm {

enum class Provenance { Brute, Dp, ClosedForm, Oeis };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Brute: return "brute";
    case Provenance::Dp: return "dp";
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Oeis: return "oeis";
  }
  return "?";
}

/// Contiguous run of exact terms a_offset, a_offset+1, ... for one (k, variant).
/// Tables parsed from external data may have k = 0 (unknown).
class CountTable {
 public:
  CountTable() = default;
  CountTable(int k, Variant variant, Provenance provenance, long offset = 1)
      : k_(k), variant_(variant), provenance_(provenance), offset_(offset) {}

  int k() const noexcept { return k_; }
  const Variant& variant() const noexcept { return variant_; }
  Provenance provenance() const noexcept { return provenance_; }

  /// Index of the first stored term.
  long offset() const noexcept { return offset_; }
  /// One past the last stored index.
  long end_index() const noexcept { return offset_ + static_cast<long>(terms_.size()); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  bool contains(long n) const noexcept { return n >= offset_ && n < end_index(); }

  const Count& operator[](long n) const {
    if (!contains(n)) throw std::out_of_range("index " + std::to_string(n) + " not in table");
    return terms_[static_cast<std::size_t>(n - offset_)];
  }

  void push_back(Count c) {
    if (c < 0) throw PreconditionError("counts must be nonnegative");
    terms_.push_back(std::move(c));
  }

  const std::vector<Count>& terms() const noexcept { return terms_; }

 private:
  int k_ = 0;
  Variant variant_;
  Provenance provenance_ = Provenance::Oeis;
  long offset_ = 1;
  std::vector<Count> terms_;
};

}  // namespace boundperm
