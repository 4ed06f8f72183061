#include <gtest/gtest.h>

#include <random>

#include "logmatch/comparator.hpp"
#include "test_support.hpp"

using namespace logmatch;
using logmatch::testing::seq;

namespace {

ComparisonCounts postings(const EncodedSequence& t, const EncodedSequence& p) {
  return count_by_postings(build_index(t), build_index(p));
}

ComparisonCounts planes(const EncodedSequence& t, const EncodedSequence& p) {
  return count_by_bitplanes(build_index(t), build_index(p));
}

EncodedSequence bin(const std::string& s) { return seq(s, binary_alphabet()); }

void expect_all_engines(const EncodedSequence& t, const EncodedSequence& p, std::size_t r) {
  const auto naive = count_naive(t, p);
  EXPECT_EQ(naive.r, r);
  EXPECT_EQ(naive.m, p.length());
  EXPECT_EQ(naive.n, t.length());
  EXPECT_EQ(postings(t, p), naive);
  EXPECT_EQ(planes(t, p), naive);
}

}  // namespace

TEST(Comparator, WorkedExampleSixMatchesFourMismatches) {
  const auto c = postings(seq("ATCAAGATCA"), seq("AAGAGGCTCA"));
  EXPECT_EQ(c.r, 6u);
  EXPECT_EQ(c.text_mismatches(), 4u);
  EXPECT_EQ(c.pattern_mismatches(), 4u);
  expect_all_engines(seq("ATCAAGATCA"), seq("AAGAGGCTCA"), 6);
}

TEST(Comparator, BinaryEqualLength) {
  const auto c = postings(bin("01010010"), bin("01001000"));
  EXPECT_EQ(c.r, 5u);
  EXPECT_EQ(c.text_mismatches(), 3u);
  expect_all_engines(bin("01010010"), bin("01001000"), 5);
}

TEST(Comparator, OverhangCountsAsTextMismatch) {
  const auto b = planes(bin("01010010"), bin("0100100"));
  EXPECT_EQ(b.r, 4u);
  EXPECT_EQ(b.m, 7u);
  EXPECT_EQ(b.text_mismatches(), 4u);
  EXPECT_EQ(b.pattern_mismatches(), 3u);

  const auto c = planes(bin("01010010"), bin("0100"));
  EXPECT_EQ(c.r, 3u);
  EXPECT_EQ(c.text_mismatches(), 5u);
  EXPECT_EQ(c.pattern_mismatches(), 1u);

  expect_all_engines(bin("01010010"), bin("0100100"), 4);
  expect_all_engines(bin("01010010"), bin("0100"), 3);
}

TEST(Comparator, DisjointSymbols) {
  const auto c = count_naive(seq("AAAA"), seq("TTTT"));
  EXPECT_EQ(c.r, 0u);
  EXPECT_EQ(c.text_mismatches(), 4u);
  expect_all_engines(seq("AAAA"), seq("TTTT"), 0);
}

TEST(Comparator, IdenticalRegion) {
  const auto s = seq("cgacctctggacaggccact");
  const auto c = count_naive(s, s);
  EXPECT_EQ(c.r, 20u);
  EXPECT_EQ(c.text_mismatches(), 0u);
  expect_all_engines(s, s, 20);
}

TEST(Comparator, PatternLongerThanText) {
  for (Engine e : kAllEngines) {
    try {
      count(e, seq("ACG"), seq("ACGT"));
      FAIL() << to_string(e);
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::PatternLongerThanText) << to_string(e);
    }
  }
}

TEST(Comparator, AlphabetMismatch) {
  for (Engine e : kAllEngines) {
    try {
      count(e, seq("0101", binary_alphabet()), seq("ACG"));
      FAIL() << to_string(e);
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::AlphabetMismatch) << to_string(e);
    }
  }
}

TEST(Comparator, EqualAlphabetsFromDifferentInstancesAreCompatible) {
  const auto a = build_alphabet("ATGC");
  const auto b = build_alphabet("atgc");
  EXPECT_EQ(count_naive(seq("ACGT", a), seq("ACGA", b)).r, 3u);
}

TEST(Comparator, VerifiedCountAgrees) {
  const auto c = count_verified(seq("ATCAAGATCA"), seq("AAGAGGCTCA"));
  EXPECT_EQ(c.r, 6u);
}

TEST(Comparator, EngineNamesRoundTrip) {
  for (Engine e : kAllEngines) EXPECT_EQ(parse_engine(to_string(e)), e);
  EXPECT_FALSE(parse_engine("kmp").has_value());
}

TEST(ComparatorProperty, ExhaustiveBinaryUpToSix) {
  // Every pattern length m <= n for every text of length n.
  std::vector<std::vector<EncodedSequence>> by_len(7);
  std::vector<std::vector<PositionIndex>> idx(7);
  for (std::size_t len = 1; len <= 6; ++len) {
    by_len[len] = logmatch::testing::all_sequences(binary_alphabet(), len);
    for (const auto& s : by_len[len]) idx[len].push_back(build_index(s));
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t ti = 0; ti < by_len[n].size(); ++ti) {
      for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t pi = 0; pi < by_len[m].size(); ++pi) {
          const auto naive = count_naive(by_len[n][ti], by_len[m][pi]);
          ASSERT_EQ(count_by_postings(idx[n][ti], idx[m][pi]), naive);
          ASSERT_EQ(count_by_bitplanes(idx[n][ti], idx[m][pi]), naive);
        }
      }
    }
  }
}

TEST(ComparatorProperty, RandomisedEquivalence) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 3000);
  for (int trial = 0; trial < 300; ++trial) {
    const auto alphabet = logmatch::testing::random_alphabet(rng, 20);
    const std::size_t n = len(rng);
    const std::size_t m = 1 + rng() % n;
    const auto t = logmatch::testing::random_sequence(rng, alphabet, n);
    // Bias toward similarity so r is not always ~n/k.
    auto ids = std::vector<SymbolId>(t.ids().begin(), t.ids().begin() + static_cast<long>(m));
    for (auto& id : ids) {
      if (rng() % 3 == 0) id = static_cast<SymbolId>(rng() % alphabet->size());
    }
    const EncodedSequence p(alphabet, ids);
    const auto naive = count_naive(t, p);
    ASSERT_EQ(postings(t, p), naive);
    ASSERT_EQ(planes(t, p), naive);
  }
}

TEST(ComparatorProperty, SymmetricAtEqualLength) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    const auto a = logmatch::testing::random_sequence(rng, dna_alphabet(), n);
    const auto b = logmatch::testing::random_sequence(rng, dna_alphabet(), n);
    ASSERT_EQ(planes(a, b).r, planes(b, a).r);
    ASSERT_EQ(postings(a, b).r, postings(b, a).r);
  }
}

TEST(ComparatorProperty, PointMutationOfMatchDropsOne) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 400;
    const auto t = logmatch::testing::random_sequence(rng, dna_alphabet(), n);
    const auto p = logmatch::testing::random_sequence(rng, dna_alphabet(), 1 + rng() % n);
    std::vector<std::size_t> matching;
    for (std::size_t i = 1; i <= p.length(); ++i) {
      if (t.at(i) == p.at(i)) matching.push_back(i);
    }
    if (matching.empty()) continue;
    const std::size_t pos = matching[rng() % matching.size()];
    std::vector<SymbolId> ids(p.ids().begin(), p.ids().end());
    ids[pos - 1] = static_cast<SymbolId>((ids[pos - 1] + 1 + rng() % 3) % 4);
    const EncodedSequence mutated(dna_alphabet(), ids);
    for (Engine e : kAllEngines) ASSERT_EQ(count(e, t, mutated).r + 1, count(e, t, p).r);
  }
}

TEST(ComparatorProperty, SelfComparisonMatchesEverything) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = logmatch::testing::random_sequence(rng, dna_alphabet(), 1 + rng() % 2000);
    for (Engine e : kAllEngines) {
      const auto c = count(e, t, t);
      ASSERT_EQ(c.r, t.length());
      ASSERT_EQ(c.text_mismatches(), 0u);
    }
  }
}

TEST(ComparatorProperty, CountsAreInvariantUnderSymbolRelabelling) {
  // Relabelling text and pattern by the same permutation must not change r.
  std::mt19937_64 rng(21);
  std::vector<SymbolId> perm{0, 1, 2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const auto t = logmatch::testing::random_sequence(rng, dna_alphabet(), n);
    const auto p = logmatch::testing::random_sequence(rng, dna_alphabet(), 1 + rng() % n);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabel = [&](const EncodedSequence& s) {
      std::vector<SymbolId> ids;
      for (SymbolId id : s.ids()) ids.push_back(perm[id]);
      return EncodedSequence(dna_alphabet(), ids);
    };
    for (Engine e : kAllEngines) ASSERT_EQ(count(e, relabel(t), relabel(p)), count(e, t, p));
  }
}
