#include <gtest/gtest.h>

#include "logmatch/scoring.hpp"
#include "test_support.hpp"

using namespace logmatch;
using logmatch::testing::seq;

namespace {

ComparisonCounts counts(std::size_t r, std::size_t m, std::size_t n) { return {r, m, n}; }

Rational frac(std::int64_t a, std::int64_t b) { return Rational(__int128{a}, __int128{b}); }

}  // namespace

TEST(Rational, ReducesAndCompares) {
  EXPECT_EQ(frac(6, 10), frac(3, 5));
  EXPECT_EQ(frac(4, -8), frac(-1, 2));
  EXPECT_LT(frac(1, 3), frac(1, 2));
  EXPECT_EQ(frac(1, 3) + frac(2, 3), Rational(1));
  EXPECT_EQ(frac(3, 4) * frac(2, 3), frac(1, 2));
  EXPECT_EQ(frac(1, 2) - frac(3, 4), frac(-1, 4));
  EXPECT_EQ(frac(10, 19).to_string(), "10/19");
  EXPECT_EQ(Rational(-6).to_string(), "-6");
  EXPECT_THROW(frac(1, 0), std::domain_error);
}

TEST(Membership, WorkedValues) {
  const auto a = membership(counts(6, 10, 10));
  EXPECT_EQ(a.match, frac(6, 10));
  EXPECT_EQ(a.mismatch, frac(4, 10));
  EXPECT_DOUBLE_EQ(a.match.to_double(), 0.6);
  EXPECT_DOUBLE_EQ(a.mismatch.to_double(), 0.4);

  const auto b = membership(counts(5, 8, 8));
  EXPECT_DOUBLE_EQ(b.match.to_double(), 0.625);
  EXPECT_DOUBLE_EQ(b.mismatch.to_double(), 0.375);

  const auto c = membership(counts(9, 9, 12));
  EXPECT_EQ(c.match, Rational(1));
  EXPECT_EQ(c.mismatch, Rational(0));
}

TEST(Score, WorkedExampleIsTwo) {
  const auto s = score(counts(6, 10, 10));
  EXPECT_EQ(s.score, Rational(2));
  EXPECT_EQ(s.match_percent, Rational(60));
}

TEST(Score, OverhangExamples) {
  // 4*(4/7) - 4*(3/7) = 4/7 exactly; the rounded 0.572 is not reproduced.
  const auto b = score(counts(4, 7, 8));
  EXPECT_EQ(b.score, frac(4, 7));
  EXPECT_NEAR(b.score.to_double(), 0.5714285714285714, 1e-12);

  const auto c = score(counts(3, 4, 8));
  EXPECT_EQ(c.score, Rational(1));
}

TEST(Score, PerfectAndTotalMismatch) {
  const auto full = score(counts(20, 20, 20));
  EXPECT_EQ(full.score, Rational(20));
  EXPECT_EQ(full.match_percent, Rational(100));
  for (std::int64_t k : {1, 2, 7, 100}) {
    const auto none = score(counts(0, static_cast<std::size_t>(k), static_cast<std::size_t>(k)));
    EXPECT_EQ(none.score, Rational(-k));
    EXPECT_EQ(none.match_percent, Rational(0));
  }
}

TEST(Score, RejectsInvalidCounts) {
  EXPECT_THROW(score(counts(5, 4, 8)), std::invalid_argument);
  EXPECT_THROW(score(counts(1, 9, 8)), std::invalid_argument);
  EXPECT_THROW(score(counts(0, 0, 8)), std::invalid_argument);
}

TEST(ScoreFromSequences, EndToEnd) {
  for (Engine e : kAllEngines) {
    EXPECT_EQ(score_from_sequences(seq("ATCAAGATCA"), seq("AAGAGGCTCA"), e).score, Rational(2));
    EXPECT_EQ(score_from_sequences(seq("01010010", binary_alphabet()),
                                   seq("01001000", binary_alphabet()), e)
                  .score,
              Rational(2));
    const auto x = seq("GATTACAGATTACA");
    EXPECT_EQ(score_from_sequences(x, x, e).score,
              Rational(static_cast<std::int64_t>(x.length())));
  }
}

TEST(ScoreProperty, InvariantsOverFullGrid) {
  // Every (r, m, n) with 0 <= r <= m <= n <= 64.
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t m = 1; m <= n; ++m) {
      Rational previous;
      for (std::size_t r = 0; r <= m; ++r) {
        const auto rep = score(counts(r, m, n));
        ASSERT_EQ(rep.mu_match + rep.mu_mismatch, Rational(1));

        // Two-term formula in floating point, independent of the closed form.
        const double rd = static_cast<double>(r), md = static_cast<double>(m),
                     nd = static_cast<double>(n);
        const double two_term = rd * (rd / md) - (nd - rd) * ((md - rd) / md);
        ASSERT_NEAR(rep.score.to_double(), two_term, 1e-9);

        ASSERT_GE(rep.score, Rational(-static_cast<std::int64_t>(n)));
        ASSERT_LE(rep.score, Rational(static_cast<std::int64_t>(m)));
        ASSERT_EQ(rep.score == Rational(static_cast<std::int64_t>(m)), r == m);
        if (n == m) {
          ASSERT_EQ(rep.score, Rational(static_cast<std::int64_t>(r) -
                                        static_cast<std::int64_t>(n - r)));
        }
        if (r > 0) {
          ASSERT_GT(rep.score, previous);
          // Each extra match adds exactly (n + m) / m.
          ASSERT_EQ(rep.score - previous, Rational(__int128(n + m), __int128(m)));
        }
        previous = rep.score;
      }
      if (n == m) {
        ASSERT_EQ(score(counts(0, m, n)).score, Rational(-static_cast<std::int64_t>(n)));
      }
    }
  }
}

TEST(ScoreProperty, LargeCountsStayExact) {
  const auto rep = score(counts(2'000'000'000, 3'000'000'000, 3'000'000'000));
  EXPECT_EQ(rep.score, Rational(1'000'000'000));
  EXPECT_EQ(rep.mu_match + rep.mu_mismatch, Rational(1));
}
