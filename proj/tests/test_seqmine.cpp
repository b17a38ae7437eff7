#include <boundperm/closed_form.hpp>
#include <boundperm/frontier_dp.hpp>
#include <boundperm/seqmine.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace boundperm;

namespace {

std::vector<Count> counts(std::initializer_list<long> v) {
  std::vector<Count> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

Recurrence mined(const std::vector<Count>& t, std::size_t max_order) {
  const MineResult r = find_recurrence(t, max_order);
  if (!std::holds_alternative<Recurrence>(r)) throw std::runtime_error("no recurrence mined");
  return std::get<Recurrence>(r);
}

// Order r - 1 admits no solution for any transient the miner could use.
void expect_minimal(const std::vector<Count>& t, std::size_t r, std::size_t max_order) {
  if (r < 2) return;
  const std::size_t q = r - 1;
  for (std::size_t tr = 0; tr <= max_order && t.size() >= tr + 2 * q + kFitMargin; ++tr)
    EXPECT_FALSE(hankel_fit(t, q, tr).has_value()) << "order " << q << " transient " << tr;
}

}  // namespace

TEST(FindRecurrence, K2) {
  const auto t = closed_table(2, 20).terms();
  const auto rec = mined(t, 8);
  EXPECT_EQ(rec.coefficients, counts({1, 0, 1}));
  expect_minimal(t, 3, 8);
}

TEST(FindRecurrence, K3) {
  const auto t = closed_table(3, 30).terms();
  const auto rec = mined(t, 8);
  EXPECT_EQ(rec.coefficients, counts({2, -1, 2, 1, 1, 0, -1, -1}));
  expect_minimal(t, 8, 8);
}

TEST(FindRecurrence, Constant) {
  const std::vector<Count> ones(12, Count(1));
  const auto rec = mined(ones, 4);
  EXPECT_EQ(rec.coefficients, counts({1}));
  EXPECT_EQ(rec.valid_from, 2);
}

TEST(FindRecurrence, InsufficientDataIsDistinct) {
  const auto t = closed_table(3, 19).terms();
  const MineResult r = find_recurrence(t, 8);
  ASSERT_TRUE(std::holds_alternative<InsufficientData>(r));
  EXPECT_EQ(std::get<InsufficientData>(r).have, 19u);
  EXPECT_EQ(std::get<InsufficientData>(r).need, 20u);
  EXPECT_THROW(find_recurrence(t, 0), PreconditionError);
}

TEST(FindRecurrence, NoneForFactorials) {
  std::vector<Count> f{1};
  for (long n = 2; n <= 30; ++n) f.push_back(f.back() * n);
  EXPECT_TRUE(std::holds_alternative<NoRecurrence>(find_recurrence(f, 10)));
  // n * 2^n needs order 2
  std::vector<Count> g;
  for (long n = 1; n <= 20; ++n) g.push_back(Count(n) << n);
  EXPECT_EQ(mined(g, 5).coefficients, counts({4, -4}));
}

TEST(FindRecurrence, TransientIsAbsorbed) {
  // junk in the first terms, Fibonacci afterwards
  auto t = Recurrence({1, 1}, {1, 1}, 3).terms(25);
  t[0] = 7;
  t[1] = -3;
  const auto rec = mined(t, 6);
  EXPECT_EQ(rec.coefficients, counts({1, 1}));
  EXPECT_EQ(rec.valid_from, 5);
  EXPECT_EQ(rec.terms(25), t);
}

TEST(FindRecurrence, ScaleInvariance) {
  for (int k = 2; k <= 4; ++k) {
    const auto t = term_table(GapSpec(k), Variant::anchored(), 90).terms();
    const auto base = mined(t, 40);
    for (long c : {-1L, 3L, 1000L}) {
      std::vector<Count> s;
      for (const auto& v : t) s.push_back(v * c);
      EXPECT_EQ(mined(s, 40).coefficients, base.coefficients) << "k=" << k << " c=" << c;
    }
  }
}

TEST(FindRecurrence, ShiftTolerance) {
  const auto t = closed_table(3, 40).terms();
  const auto base = to_gf(mined(t, 10), t);
  for (std::size_t z = 1; z <= 3; ++z) {
    std::vector<Count> s(z, Count(0));
    s.insert(s.end(), t.begin(), t.end());
    const auto rec = mined(s, 10);
    const auto gf = to_gf(rec, s);
    EXPECT_EQ(gf.denominator(), base.denominator()) << z;
  }
}

TEST(FindRecurrence, AgreesWithHankel) {
  for (int k = 1; k <= 4; ++k)
    for (const Variant& v : {Variant::anchored(), Variant::free()}) {
      if (k == 4 && v == Variant::free()) continue;  // order 67, beyond this test's data
      const auto t = term_table(GapSpec(k), v, 100).terms();
      const auto rec = mined(t, 45);
      const auto h = hankel_fit(t, rec.order(), static_cast<std::size_t>(rec.valid_from) - rec.order() - 1);
      ASSERT_TRUE(h.has_value()) << k;
      for (std::size_t j = 0; j < rec.order(); ++j) EXPECT_EQ((*h)[j], mpq_class(rec.coefficients[j]));
      expect_minimal(t, rec.order(), 45);
      EXPECT_EQ(expand_gf(to_gf(rec, t), static_cast<long>(t.size())), t) << k << v.str();
    }
}

TEST(BerlekampMassey, LinearComplexity) {
  const auto fib = Recurrence({1, 1}, {1, 1}, 3).terms(20);
  const auto r = detail::berlekamp_massey(fib);
  EXPECT_EQ(r.length, 2u);
  EXPECT_EQ(r.connection, (std::vector<mpq_class>{1, -1, -1}));
  EXPECT_EQ(detail::berlekamp_massey(counts({0, 0, 0, 0})).length, 0u);
  EXPECT_EQ(detail::berlekamp_massey(counts({0, 0, 0, 5})).length, 4u);
}

TEST(ToGf, Examples) {
  const auto t2 = closed_table(2, 30).terms();
  EXPECT_EQ(to_gf(mined(t2, 8), t2), gf_k2());
  const auto t3 = closed_table(3, 40).terms();
  EXPECT_EQ(to_gf(mined(t3, 10), t3), gf_k3());
  const std::vector<Count> ones(10, Count(1));
  EXPECT_EQ(to_gf(Recurrence({1}, {1}, 2), ones), RationalGF(Polynomial{0, 1}, Polynomial{1, -1}));
}

TEST(ToGf, RejectsNonFittingRecurrence) {
  const auto t3 = closed_table(3, 30).terms();
  EXPECT_THROW(to_gf(k2_recurrence(), t3), PreconditionError);
}

TEST(ToGf, MatchesSeriesOracle) {
  const auto t = term_table(GapSpec(4), Variant::anchored(), 90).terms();
  const auto gf = to_gf(mined(t, 40), t);
  std::vector<long> num, den;
  for (const auto& c : gf.numerator().dense()) num.push_back(c.get_si());
  for (const auto& c : gf.denominator().dense()) den.push_back(c.get_si());
  const auto s = oracle::series(num, den, 90);
  for (std::size_t n = 1; n <= 90; ++n) EXPECT_EQ(s[n], mpq_class(t[n - 1])) << n;
}

TEST(ConjectureProbe, KnownCases) {
  const auto r2 = conjecture_probe(GapSpec(2), 20, 20);
  ASSERT_TRUE(r2.recurrence);
  EXPECT_EQ(r2.recurrence->order(), 3u);
  EXPECT_TRUE(r2.holdout_match);
  EXPECT_EQ(*r2.gf, gf_k2());

  const auto r3 = conjecture_probe(GapSpec(3), 40, 20);
  ASSERT_TRUE(r3.recurrence);
  EXPECT_EQ(r3.recurrence->order(), 8u);
  EXPECT_TRUE(r3.holdout_match);
  EXPECT_EQ(*r3.gf, gf_k3());
  EXPECT_EQ(r3.state_space, 24u);

  const auto r1 = conjecture_probe(GapSpec(1), 10, 5);
  ASSERT_TRUE(r1.recurrence);
  EXPECT_EQ(r1.recurrence->order(), 1u);
  EXPECT_EQ(r1.gf->denominator(), (Polynomial{1, -1}));
}

TEST(ConjectureProbe, K4Frozen) {
  const auto r = conjecture_probe(GapSpec(4), 80, 40);
  ASSERT_TRUE(r.recurrence);
  EXPECT_EQ(r.recurrence->order(), 31u);
  EXPECT_TRUE(r.holdout_match);
}

TEST(ConjectureProbe, FreeVariant) {
  const auto r = conjecture_probe(GapSpec(2), 40, 20, 0, Variant::free());
  ASSERT_TRUE(r.recurrence);
  EXPECT_EQ(r.recurrence->coefficients, counts({3, -3, 2, -2, 1}));
  EXPECT_TRUE(r.holdout_match);
}

TEST(ConjectureProbe, TooShort) {
  EXPECT_THROW(conjecture_probe(GapSpec(3), 5, 5), PreconditionError);
  EXPECT_THROW(conjecture_probe(GapSpec(3), 20, 5, 10), PreconditionError);
}
