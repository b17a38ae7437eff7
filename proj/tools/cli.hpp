#pragma once

// boundperm command line. run() is the whole program minus process setup,
// so tests can drive it in-process.

#include <boundperm/boundperm.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace boundperm::cli {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kEnvironment = 3 };

/// Raised for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Variant parse_variant(const std::string& s) {
  if (s == "anchored") return Variant::anchored();
  if (s == "free") return Variant::free();
  const std::string prefix = "endpoints:";
  if (s.rfind(prefix, 0) == 0) {
    const auto body = s.substr(prefix.size());
    const auto comma = body.find(',');
    try {
      std::size_t a = 0, b = 0;
      if (comma == std::string::npos) throw std::invalid_argument(s);
      const std::string ls = body.substr(0, comma), rs = body.substr(comma + 1);
      const int start = std::stoi(ls, &a), end = std::stoi(rs, &b);
      if (a != ls.size() || b != rs.size() || start < 1 || end < 1) throw std::invalid_argument(s);
      return Variant::endpoints(start, end);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("bad --variant '" + s + "' (anchored, free or endpoints:<s>,<e>)");
}

namespace detail {

inline std::string int_array(const std::vector<Count>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

inline std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

// One line per check; collects the overall verdict.
class Checks {
 public:
  explicit Checks(std::ostream& out) : out_(out) {}
  void report(bool ok, const std::string& name, const std::string& detail = {}) {
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out_ << ": " << detail;
    out_ << '\n';
    all_ &= ok;
  }
  int exit_code() const { return all_ ? kOk : kVerifyFailed; }

 private:
  std::ostream& out_;
  bool all_ = true;
};

inline CountTable table_by(const std::string& method, int k, const Variant& v, std::size_t max_n) {
  if (method == "dp") return term_table(GapSpec(k), v, max_n);
  if (method == "brute") return brute_table(GapSpec(k), v, max_n, {true, 0});
  if (k > 3 || v.kind != Variant::Kind::Anchored)
    throw UsageError("--method closed needs k <= 3 and the anchored variant");
  return closed_table(k, static_cast<long>(max_n));
}

inline int verify_lemma2(std::ostream& out, std::size_t max_n) {
  Checks c(out);
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::size_t perms = 0, round_trips = 0;
    for (const auto& p : enumerate(GapSpec(2), n, Variant::anchored())) {
      ++perms;
      round_trips += reconstruct_k2(decompose_k2(p)) == p;
    }
    std::size_t inverse = 0;
    const auto decs = all_k2_decompositions(n);
    for (const auto& d : decs) inverse += decompose_k2(reconstruct_k2(d)) == d;
    const bool ok = round_trips == perms && inverse == decs.size() && Count(static_cast<unsigned long>(decs.size())) == count_k2(static_cast<long>(n));
    c.report(ok, "lemma2 n=" + std::to_string(n),
             std::to_string(perms) + " permutations, " + std::to_string(decs.size()) + " swap sets");
  }
  return c.exit_code();
}

inline int verify_lemma33(std::ostream& out, std::size_t max_n) {
  Checks c(out);
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::size_t total = 0, good = 0;
    for_each_permutation(GapSpec(3), n, Variant::anchored(), [&](std::span<const Value> e) {
      ++total;
      good += validate_lemma33(Permutation(std::vector<Value>(e.begin(), e.end())));
    });
    c.report(good == total, "lemma33 n=" + std::to_string(n), std::to_string(total) + " permutations");
  }
  return c.exit_code();
}

inline int verify_fgh(std::ostream& out, std::size_t max_n) {
  Checks c(out);
  const long top = static_cast<long>(max_n);
  std::vector<FghCounts> b{FghCounts{}};  // b[n], index 0 unused
  for (long n = 1; n <= top; ++n) b.push_back(count_classes_fgh(static_cast<std::size_t>(n)));
  auto F = [&](long j) { return j >= 1 ? b[j].f : Count(0); };
  auto G = [&](long j) { return j >= 1 ? b[j].g : Count(0); };
  auto H = [&](long j) { return j >= 1 ? b[j].h : Count(0); };
  for (long n = 6; n <= top; ++n) {
    const std::string at = " n=" + std::to_string(n);
    c.report(F(n) == G(n - 1) + H(n - 1) + F(n - 5), "fgh F" + at);
    c.report(G(n) == F(n) + G(n - 2) + F(n - 3) + G(n - 4) + H(n - 2), "fgh G" + at);
    c.report(H(n) == F(n - 3) + G(n - 3) + F(n - 4) + G(n - 5) + H(n - 3), "fgh H" + at);
    c.report(H(n) == F(n - 3) + G(n - 1) - F(n - 1), "fgh H elimination" + at);
  }
  if (top >= 1) {
    const auto rec = fgh_table(top);
    const auto two = fg_two_term_table(top);
    bool same = true;
    for (long n = 1; n <= top; ++n)
      same &= rec.f[n] == F(n) && rec.g[n] == G(n) && rec.h[n] == H(n) && two.f[n] == F(n) && two.g[n] == G(n);
    c.report(same, "fgh tables match enumeration up to n=" + std::to_string(top));
  }
  return c.exit_code();
}

inline int verify_recurrences(std::ostream& out, std::size_t max_n, std::vector<int> ks) {
  Checks c(out);
  if (ks.empty()) ks = {1, 2, 3};
  for (int k : ks) {
    if (k < 1 || k > 3) throw UsageError("--suite recurrences supports k in {1,2,3}");
    const auto closed = closed_table(k, static_cast<long>(max_n));
    const auto dp = term_table(GapSpec(k), Variant::anchored(), max_n);
    c.report(closed.terms() == dp.terms(), "recurrences k=" + std::to_string(k) + " closed = dp",
             "n <= " + std::to_string(max_n));
    const std::size_t brute_n = std::min<std::size_t>(max_n, 12);
    const auto brute = brute_table(GapSpec(k), Variant::anchored(), brute_n, {true, 0});
    const std::vector<Count> head(closed.terms().begin(), closed.terms().begin() + static_cast<long>(brute_n));
    c.report(brute.terms() == head, "recurrences k=" + std::to_string(k) + " closed = brute",
             "n <= " + std::to_string(brute_n));
  }
  return c.exit_code();
}

inline int verify_gf(std::ostream& out, std::size_t max_n) {
  Checks c(out);
  const long top = static_cast<long>(max_n);
  c.report(expand_gf(gf_k2(), top) == closed_table(2, top).terms(), "gf k=2 expansion", "n <= " + std::to_string(top));
  c.report(expand_gf(gf_k3(), top) == closed_table(3, top).terms(), "gf k=3 expansion", "n <= " + std::to_string(top));
  return c.exit_code();
}

inline int verify_oeis(std::ostream& out, const std::string& cache_dir) {
  CountTable published;
  try {
    published = fetch_terms("A249665", cache_dir);
  } catch (const EnvironmentError& e) {
    out << "SKIP oeis A249665: " << e.what() << '\n';
    return kEnvironment;
  }
  Checks c(out);
  const auto ours = closed_table(3, published.end_index() + kMaxShift);
  const auto r = compare(ours, published);
  c.report(r.best.full(), "oeis A249665 vs k=3 anchored",
           "shift " + std::to_string(r.best.shift) + ", overlap " + std::to_string(r.best.overlap) +
               (r.best.first_mismatch ? ", first mismatch at n=" + std::to_string(*r.best.first_mismatch) : ""));
  return c.exit_code();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting, enumeration and recurrence mining for bounded-gap permutations", "boundperm"};
  app.require_subcommand(1);

  int k = 0;
  std::size_t n = 0, max_n = 0, terms = 60, holdout = 20, max_order = 0;
  std::string variant_s = "anchored", method, format, suite, cache_dir;
  unsigned threads = 0;
  std::vector<int> ks;

  auto* count = app.add_subcommand("count", "Count k-bounded permutations of [n]");
  count->add_option("--k", k, "Gap bound")->required()->check(CLI::PositiveNumber);
  count->add_option("--n", n, "Length")->required()->check(CLI::PositiveNumber);
  count->add_option("--variant", variant_s, "anchored, free or endpoints:<s>,<e>");
  count->add_option("--method", method, "auto, brute, dp or closed")
      ->check(CLI::IsMember({"auto", "brute", "dp", "closed"}));
  count->add_option("--threads", threads, "Brute-force worker threads (0 = all cores)");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List k-bounded permutations in lexicographic order");
  enumerate_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--variant", variant_s);
  enumerate_cmd->add_option("--format", format, "lines or json")->check(CLI::IsMember({"lines", "json"}));

  auto* table = app.add_subcommand("table", "Print counts for n = 1..max-n");
  table->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  table->add_option("--max-n", max_n)->required();
  table->add_option("--variant", variant_s);
  table->add_option("--format", format, "bfile, csv or json")->check(CLI::IsMember({"bfile", "csv", "json"}));
  table->add_option("--method", method, "dp, closed or brute")->check(CLI::IsMember({"dp", "closed", "brute"}));

  auto* mine = app.add_subcommand("mine", "Mine a recurrence from DP terms and test it on held-out terms");
  mine->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  mine->add_option("--terms", terms, "Training terms");
  mine->add_option("--holdout", holdout, "Held-out terms");
  mine->add_option("--max-order", max_order, "Largest order tried (0 = as large as the data allows)");
  mine->add_option("--variant", variant_s);

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"lemma2", "lemma33", "fgh", "recurrences", "gf", "oeis"}));
  verify->add_option("--max-n", max_n);
  verify->add_option("--k", ks);
  verify->add_option("--cache-dir", cache_dir, "OEIS cache (default $BOUNDPERM_OEIS_CACHE or ./oeis-cache)");

  auto* bench = app.add_subcommand("bench", "Time each n and report search effort as CSV");
  bench->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  bench->add_option("--max-n", max_n)->required();
  bench->add_option("--method", method, "dp or brute")->check(CLI::IsMember({"dp", "brute"}));
  bench->add_option("--variant", variant_s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const Variant variant = parse_variant(variant_s);

    if (count->parsed()) {
      if (method.empty()) method = "auto";
      if (method == "auto") method = (k <= 3 && variant.kind == Variant::Kind::Anchored) ? "closed" : "dp";
      Count c;
      if (method == "closed") {
        if (k > 3 || variant.kind != Variant::Kind::Anchored)
          throw UsageError("--method closed needs k <= 3 and the anchored variant");
        c = k == 1 ? count_k1(static_cast<long>(n)) : k == 2 ? count_k2(static_cast<long>(n)) : count_k3(static_cast<long>(n));
      } else if (method == "dp") {
        c = count_dp(GapSpec(k), n, variant);
      } else {
        c = count_brute(GapSpec(k), n, variant, {true, threads});
      }
      out << c.get_str() << '\n';
      return kOk;
    }

    if (enumerate_cmd->parsed()) {
      const bool json = format == "json";
      nlohmann::json arr = nlohmann::json::array();
      for_each_permutation(GapSpec(k), n, variant, [&](std::span<const Value> p) {
        if (json) {
          arr.push_back(std::vector<Value>(p.begin(), p.end()));
          return;
        }
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
        out << '\n';
      });
      if (json) out << arr.dump() << '\n';
      return kOk;
    }

    if (table->parsed()) {
      if (method.empty()) method = "dp";
      const CountTable t = detail::table_by(method, k, variant, max_n);
      if (format.empty() || format == "bfile") {
        out << serialize_bfile(t);
      } else if (format == "csv") {
        for (long i = t.offset(); i < t.end_index(); ++i) out << i << ',' << t[i].get_str() << '\n';
      } else {
        out << "{\"k\":" << k << ",\"variant\":" << detail::quoted(variant.str())
            << ",\"method\":" << detail::quoted(method) << ",\"offset\":" << t.offset()
            << ",\"terms\":" << detail::int_array(t.terms()) << "}\n";
      }
      return kOk;
    }

    if (mine->parsed()) {
      const ProbeReport r = conjecture_probe(GapSpec(k), terms, holdout, max_order, variant);
      std::ostringstream js;
      js << "{\"k\":" << r.k << ",\"variant\":" << detail::quoted(variant.str()) << ",\"terms\":" << r.terms
         << ",\"holdout\":" << r.holdout << ",\"max_order\":" << r.max_order;
      if (r.recurrence) {
        js << ",\"order\":" << r.recurrence->order()
           << ",\"coefficients\":" << detail::int_array(r.recurrence->coefficients)
           << ",\"valid_from\":" << r.recurrence->valid_from
           << ",\"gf_numerator\":" << detail::int_array(r.gf->numerator().dense())
           << ",\"gf_denominator\":" << detail::int_array(r.gf->denominator().dense());
      } else {
        js << ",\"order\":null,\"coefficients\":null,\"valid_from\":null,\"gf_numerator\":null,\"gf_denominator\":null";
      }
      js << ",\"evidence\":\"numerical, not a proof\",\"holdout_match\":" << (r.holdout_match ? "true" : "false")
         << ",\"state_space_size\":" << r.state_space << "}";
      out << js.str() << '\n';
      return r.holdout_match ? kOk : kVerifyFailed;
    }

    if (verify->parsed()) {
      if (suite == "lemma2") return detail::verify_lemma2(out, max_n ? max_n : 16);
      if (suite == "lemma33") return detail::verify_lemma33(out, max_n ? max_n : 10);
      if (suite == "fgh") return detail::verify_fgh(out, max_n ? max_n : 12);
      if (suite == "recurrences") return detail::verify_recurrences(out, max_n ? max_n : 60, ks);
      if (suite == "gf") return detail::verify_gf(out, max_n ? max_n : 200);
      if (cache_dir.empty()) cache_dir = detail::env_or("BOUNDPERM_OEIS_CACHE", "oeis-cache");
      return detail::verify_oeis(out, cache_dir);
    }

    if (bench->parsed()) {
      if (method.empty()) method = "dp";
      const bool dp = method == "dp";
      out << (dp ? "n,seconds,peak_states\n" : "n,seconds,nodes\n");
      for (std::size_t i = 1; i <= max_n; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        std::uint64_t effort = 0;
        if (dp)
          effort = count_dp_stats(GapSpec(k), i, variant).peak_states;
        else
          effort = count_brute_stats(GapSpec(k), i, variant, {true, 0}).nodes;
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        out << i << ',' << dt.count() << ',' << effort << '\n';
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EnvironmentError& e) {
    err << "error: " << e.what() << '\n';
    return kEnvironment;
  } catch (const LemmaViolation& e) {
    err << "lemma violation: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace boundperm::cli
