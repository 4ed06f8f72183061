#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "logmatch/alphabet.hpp"
#include "logmatch/logical_index.hpp"

namespace logmatch {

/// Left-anchored comparison tally. Pattern position i is compared to text
/// position i for i in 1..m; text positions m+1..n are overhang and count
/// as text mismatches.
struct ComparisonCounts {
  std::size_t r = 0;  // matches
  std::size_t m = 0;  // pattern length
  std::size_t n = 0;  // text length

  std::size_t pattern_mismatches() const noexcept { return m - r; }
  std::size_t text_mismatches() const noexcept { return n - r; }

  bool valid() const noexcept { return r <= m && m <= n && m >= 1; }

  friend bool operator==(const ComparisonCounts&, const ComparisonCounts&) = default;
};

enum class Engine { Postings, Bitplanes, Naive };

inline constexpr std::array<Engine, 3> kAllEngines{Engine::Postings, Engine::Bitplanes,
                                                   Engine::Naive};

inline std::string_view to_string(Engine engine) noexcept {
  switch (engine) {
    case Engine::Postings: return "postings";
    case Engine::Bitplanes: return "bitplanes";
    case Engine::Naive: return "naive";
  }
  return "?";
}

inline std::optional<Engine> parse_engine(std::string_view name) noexcept {
  for (Engine e : kAllEngines) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

namespace detail {

inline void check_pair(const AlphabetPtr& text_alphabet, std::size_t n,
                       const AlphabetPtr& pattern_alphabet, std::size_t m) {
  if (!same_alphabet(text_alphabet, pattern_alphabet)) {
    throw Error(ErrorKind::AlphabetMismatch, "text alphabet '" +
                                                 std::string(text_alphabet->symbols()) +
                                                 "' differs from pattern alphabet '" +
                                                 std::string(pattern_alphabet->symbols()) + "'");
  }
  if (m > n) {
    throw Error(ErrorKind::PatternLongerThanText,
                "pattern length " + std::to_string(m) + " exceeds text length " + std::to_string(n));
  }
}

}  // namespace detail

/// Sorted two-pointer merge of each symbol's posting lists. Text positions
/// beyond m stop the merge since the pattern has nothing there.
inline ComparisonCounts count_by_postings(const PositionIndex& text, const PositionIndex& pattern) {
  detail::check_pair(text.alphabet(), text.length(), pattern.alphabet(), pattern.length());
  const std::size_t m = pattern.length();
  std::size_t r = 0;
  for (std::size_t s = 0; s < text.symbol_count(); ++s) {
    const auto a = text.postings(static_cast<SymbolId>(s));
    const auto b = pattern.postings(static_cast<SymbolId>(s));
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      const Position x = a[i];
      const Position y = b[j];
      if (x > m) break;
      r += (x == y);
      i += (x <= y);
      j += (y <= x);
    }
  }
  return ComparisonCounts{r, m, text.length()};
}

/// popcount(text_plane & pattern_plane) summed over symbols, with the text
/// planes truncated to m bits before the AND.
inline ComparisonCounts count_by_bitplanes(const PositionIndex& text, const PositionIndex& pattern) {
  detail::check_pair(text.alphabet(), text.length(), pattern.alphabet(), pattern.length());
  const std::size_t m = pattern.length();
  const std::size_t full_words = m / kWordBits;
  const std::size_t tail_bits = m % kWordBits;
  const Word tail_mask = tail_bits ? (Word{1} << tail_bits) - 1 : 0;

  std::size_t r = 0;
  for (std::size_t s = 0; s < text.symbol_count(); ++s) {
    const auto a = text.plane(static_cast<SymbolId>(s));
    const auto b = pattern.plane(static_cast<SymbolId>(s));
    for (std::size_t w = 0; w < full_words; ++w) r += std::popcount(a[w] & b[w]);
    if (tail_bits) r += std::popcount((a[full_words] & tail_mask) & b[full_words]);
  }
  return ComparisonCounts{r, m, text.length()};
}

/// Direct per-position equality scan; the reference the indexed engines are
/// checked against.
inline ComparisonCounts count_naive(const EncodedSequence& text, const EncodedSequence& pattern) {
  detail::check_pair(text.alphabet(), text.length(), pattern.alphabet(), pattern.length());
  const auto t = text.ids();
  const auto p = pattern.ids();
  std::size_t r = 0;
  for (std::size_t i = 0; i < p.size(); ++i) r += (t[i] == p[i]);
  return ComparisonCounts{r, p.size(), t.size()};
}

/// Dispatch on engine, building whichever indexes it needs.
inline ComparisonCounts count(Engine engine, const EncodedSequence& text,
                              const EncodedSequence& pattern) {
  switch (engine) {
    case Engine::Naive: return count_naive(text, pattern);
    case Engine::Postings: {
      detail::check_pair(text.alphabet(), text.length(), pattern.alphabet(), pattern.length());
      return count_by_postings(build_index(text), build_index(pattern));
    }
    case Engine::Bitplanes: {
      detail::check_pair(text.alphabet(), text.length(), pattern.alphabet(), pattern.length());
      return count_by_bitplanes(build_index(text), build_index(pattern));
    }
  }
  throw std::invalid_argument("unknown engine");
}

/// Same as count() but with prebuilt indexes.
inline ComparisonCounts count(Engine engine, const EncodedSequence& text,
                              const PositionIndex& text_index, const EncodedSequence& pattern,
                              const PositionIndex& pattern_index) {
  switch (engine) {
    case Engine::Naive: return count_naive(text, pattern);
    case Engine::Postings: return count_by_postings(text_index, pattern_index);
    case Engine::Bitplanes: return count_by_bitplanes(text_index, pattern_index);
  }
  throw std::invalid_argument("unknown engine");
}

/// Runs all three engines and throws EngineDisagreement unless they agree.
inline ComparisonCounts count_verified(const EncodedSequence& text, const EncodedSequence& pattern) {
  detail::check_pair(text.alphabet(), text.length(), pattern.alphabet(), pattern.length());
  const auto text_index = build_index(text);
  const auto pattern_index = build_index(pattern);
  const auto naive = count_naive(text, pattern);
  const auto postings = count_by_postings(text_index, pattern_index);
  const auto planes = count_by_bitplanes(text_index, pattern_index);
  if (!(naive == postings && naive == planes)) {
    throw Error(ErrorKind::EngineDisagreement,
                "naive r=" + std::to_string(naive.r) + ", postings r=" +
                    std::to_string(postings.r) + ", bitplanes r=" + std::to_string(planes.r));
  }
  return naive;
}

}  // namespace logmatch
