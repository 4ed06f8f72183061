#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logmatch/error.hpp"

namespace logmatch {

using SymbolId = std::uint8_t;

/// Ordered set of distinct symbols, each with a one-hot code. Symbol i owns
/// bit i counted from the most significant end, so {A,T,G,C} yields
/// A=1000, T=0100, G=0010, C=0001. Symbols are stored uppercased.
class Alphabet {
 public:
  static constexpr std::int16_t kAbsent = -1;

  explicit Alphabet(std::string_view symbols) {
    lookup_.fill(kAbsent);
    for (char raw : symbols) {
      const char c = normalize(raw);
      const auto slot = static_cast<unsigned char>(c);
      if (lookup_[slot] != kAbsent) {
        throw Error(ErrorKind::DuplicateSymbol,
                    "symbol '" + std::string(1, c) + "' appears more than once");
      }
      lookup_[slot] = static_cast<std::int16_t>(symbols_.size());
      symbols_.push_back(c);
    }
    if (symbols_.size() < 2) {
      throw Error(ErrorKind::AlphabetTooSmall,
                  "an alphabet needs at least 2 symbols, got " + std::to_string(symbols_.size()));
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  std::size_t code_width() const noexcept { return symbols_.size(); }
  std::string_view symbols() const noexcept { return symbols_; }

  char symbol(SymbolId id) const {
    if (id >= symbols_.size()) {
      throw Error(ErrorKind::UnknownSymbol, "symbol id " + std::to_string(id) + " out of range");
    }
    return symbols_[id];
  }

  /// Symbol id for a character (case-insensitive), or kAbsent.
  std::int16_t find(char c) const noexcept {
    return lookup_[static_cast<unsigned char>(normalize(c))];
  }

  /// One-hot code rendered as '0'/'1' characters of length code_width().
  std::string code(SymbolId id) const {
    if (id >= symbols_.size()) {
      throw Error(ErrorKind::UnknownSymbol, "symbol id " + std::to_string(id) + " out of range");
    }
    std::string bits(symbols_.size(), '0');
    bits[id] = '1';
    return bits;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
    return a.symbols_ == b.symbols_;
  }

  static char normalize(char c) noexcept {
    return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }

 private:
  std::string symbols_;
  std::array<std::int16_t, 256> lookup_{};
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr build_alphabet(std::string_view symbols) {
  return std::make_shared<const Alphabet>(symbols);
}

inline AlphabetPtr dna_alphabet() {
  static const AlphabetPtr dna = build_alphabet("ATGC");
  return dna;
}

inline AlphabetPtr binary_alphabet() {
  static const AlphabetPtr binary = build_alphabet("01");
  return binary;
}

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

/// Validated symbol string. Positions are 1-based whenever reported.
class EncodedSequence {
 public:
  EncodedSequence(AlphabetPtr alphabet, std::vector<SymbolId> ids)
      : alphabet_(std::move(alphabet)), ids_(std::move(ids)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i] >= alphabet_->size()) {
        throw Error(ErrorKind::UnknownSymbol,
                    "symbol id " + std::to_string(ids_[i]) + " at position " +
                        std::to_string(i + 1) + " out of range");
      }
    }
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::span<const SymbolId> ids() const noexcept { return ids_; }
  std::size_t length() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  /// Symbol at 1-based position.
  SymbolId at(std::size_t position) const { return ids_.at(position - 1); }

  friend bool operator==(const EncodedSequence& a, const EncodedSequence& b) {
    return same_alphabet(a.alphabet_, b.alphabet_) && a.ids_ == b.ids_;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<SymbolId> ids_;
};

enum class ValidationPolicy { Strict, Skip };

struct Encoding {
  EncodedSequence sequence;
  std::size_t dropped = 0;
};

/// Case-insensitive encoding of raw text. Strict rejects the first foreign
/// character; Skip drops foreign characters and counts them.
inline Encoding encode(std::string_view raw, const AlphabetPtr& alphabet,
                       ValidationPolicy policy = ValidationPolicy::Strict) {
  std::vector<SymbolId> ids;
  ids.reserve(raw.size());
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto id = alphabet->find(raw[i]);
    if (id == Alphabet::kAbsent) {
      if (policy == ValidationPolicy::Strict) throw ForeignSymbolError(i + 1, raw[i]);
      ++dropped;
      continue;
    }
    ids.push_back(static_cast<SymbolId>(id));
  }
  if (ids.empty()) {
    throw Error(ErrorKind::EmptySequence,
                dropped ? "no valid symbols remain after skipping " + std::to_string(dropped)
                        : std::string("sequence is empty"));
  }
  return Encoding{EncodedSequence(alphabet, std::move(ids)), dropped};
}

/// Uppercase text of an encoded sequence.
inline std::string decode(const EncodedSequence& seq) {
  std::string out;
  out.reserve(seq.length());
  const auto& alphabet = *seq.alphabet();
  for (SymbolId id : seq.ids()) out.push_back(alphabet.symbol(id));
  return out;
}

}  // namespace logmatch
