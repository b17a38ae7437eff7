#pragma once

// OEIS b-file parsing, a cached fetcher, and offset-tolerant comparison.
//
// The fetcher needs cpp-httplib; https additionally needs
// CPPHTTPLIB_OPENSSL_SUPPORT and OpenSSL at link time. The base URL can be
// overridden with BOUNDPERM_OEIS_BASE_URL (e.g. http://127.0.0.1:8080).

#include <boundperm/count.hpp>
#include <boundperm/count_table.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/permutation.hpp>

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace boundperm {

/// Parses "<index> <value>" lines, skipping blanks and '#' comments.
/// The result has k = 0 (unknown) and keeps the file's first index.
inline CountTable parse_bfile(std::string_view text) {
  std::optional<CountTable> table;
  std::size_t line_no = 0;
  long expected = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') {
      if (eol == text.size()) break;
      continue;
    }
    std::istringstream in(line);
    std::string idx_s, val_s, extra;
    in >> idx_s >> val_s;
    if (val_s.empty() || (in >> extra)) throw ParseError(line_no, "expected '<index> <value>'");
    long idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stol(idx_s, &used);
      if (used != idx_s.size()) throw std::invalid_argument(idx_s);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad index '" + idx_s + "'");
    }
    Count value;
    if (value.set_str(val_s, 10) != 0) throw ParseError(line_no, "bad value '" + val_s + "'");
    if (value < 0) throw ParseError(line_no, "negative value");
    if (!table) {
      table.emplace(0, Variant::anchored(), Provenance::Oeis, idx);
      expected = idx;
    }
    if (idx != expected) throw ParseError(line_no, "index " + idx_s + " is not contiguous");
    table->push_back(std::move(value));
    ++expected;
    if (eol == text.size()) break;
  }
  if (!table) return CountTable(0, Variant::anchored(), Provenance::Oeis);
  return std::move(*table);
}

inline std::string serialize_bfile(const CountTable& t) {
  std::string out;
  for (long n = t.offset(); n < t.end_index(); ++n) out += std::to_string(n) + " " + t[n].get_str() + "\n";
  return out;
}

/// Network or cache failure (distinct from a malformed request).
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool valid_sequence_id(std::string_view id) {
  static const std::regex re("A[0-9]{6}");
  return std::regex_match(id.begin(), id.end(), re);
}

inline std::string oeis_base_url() {
  const char* env = std::getenv("BOUNDPERM_OEIS_BASE_URL");
  return env && *env ? env : "https://oeis.org";
}

/// Cache path for a sequence id under cache_dir.
inline std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::string_view id) {
  return cache_dir / (std::string(id) + ".txt");
}

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_atomic(const std::filesystem::path& dest, const std::string& body) {
  std::filesystem::create_directories(dest.parent_path());
  std::random_device rd;
  auto tmp = dest;
  tmp += ".tmp." + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << body;
    if (!out) throw EnvironmentError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, dest);
}

}  // namespace detail

/// Terms of an OEIS entry, from cache_dir when present, else one GET of
/// its b-file which is then cached verbatim.
inline CountTable fetch_terms(std::string_view id, const std::filesystem::path& cache_dir, bool refresh = false) {
  if (!valid_sequence_id(id)) throw PreconditionError("sequence id must be 'A' followed by six digits");
  const auto cached = cache_path(cache_dir, id);
  if (!refresh && std::filesystem::exists(cached)) return parse_bfile(detail::read_file(cached));

  const std::string base = oeis_base_url();
  const std::string path = "/" + std::string(id) + "/b" + std::string(id.substr(1)) + ".txt";
  httplib::Result res;
  try {
    httplib::Client cli(base);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(30);
    cli.set_follow_location(true);
    res = cli.Get(path);
  } catch (const std::exception& e) {
    throw EnvironmentError(std::string("offline, no cache: ") + e.what());
  }
  if (!res) throw EnvironmentError("offline, no cache: " + httplib::to_string(res.error()) + " fetching " + base + path);
  if (res->status < 200 || res->status >= 300)
    throw EnvironmentError("HTTP status " + std::to_string(res->status) + " fetching " + base + path);
  CountTable t = parse_bfile(res->body);
  detail::write_atomic(cached, res->body);
  return t;
}

struct ShiftMatch {
  int shift = 0;                         // a[n] is compared with b[n + shift]
  long overlap = 0;                      // indices present in both
  long matched = 0;                      // agreeing terms before the first mismatch
  std::optional<long> first_mismatch;    // index in a's numbering

  bool full() const noexcept { return overlap > 0 && !first_mismatch; }
};

struct CompareReport {
  ShiftMatch unshifted;                // shift 0
  ShiftMatch best;                     // longest agreement among the tried shifts
  std::vector<ShiftMatch> tried;       // shifts -3..+3 in order

  long overlap() const noexcept { return unshifted.overlap; }
  std::optional<long> first_mismatch() const { return unshifted.first_mismatch; }
};

inline constexpr int kMaxShift = 3;

inline ShiftMatch compare_at(const CountTable& a, const CountTable& b, int shift) {
  ShiftMatch m;
  m.shift = shift;
  const long lo = std::max(a.offset(), b.offset() - shift);
  const long hi = std::min(a.end_index(), b.end_index() - shift);
  for (long n = lo; n < hi; ++n) {
    ++m.overlap;
    if (m.first_mismatch) continue;
    if (a[n] == b[n + shift])
      ++m.matched;
    else
      m.first_mismatch = n;
  }
  return m;
}

/// Compares on the shared index range; shifts are tried and reported, the
/// caller decides whether to accept a nonzero one.
inline CompareReport compare(const CountTable& a, const CountTable& b) {
  CompareReport r;
  for (int s = -kMaxShift; s <= kMaxShift; ++s) r.tried.push_back(compare_at(a, b, s));
  r.unshifted = r.tried[kMaxShift];
  r.best = r.unshifted;
  auto rank = [](const ShiftMatch& m) { return std::tuple(m.full(), m.matched, -std::abs(m.shift)); };
  for (const auto& m : r.tried)
    if (rank(m) > rank(r.best)) r.best = m;
  return r;
}

}  // namespace boundperm
