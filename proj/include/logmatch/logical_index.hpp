#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "logmatch/alphabet.hpp"

namespace logmatch {

using Position = std::uint32_t;
using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Per-symbol positional index of one sequence.
///
/// Holds two equivalent views: sorted 1-based posting lists, and bit-planes
/// where bit (i-1) of a symbol's plane is set iff the symbol sits at position
/// i. Padding bits past length() are always zero. Immutable once built.
///
/// Storage is flat: all posting lists share one array delimited by per-symbol
/// offsets, and the planes are laid out symbol-major in one word array.
class PositionIndex {
 public:
  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t symbol_count() const noexcept { return offsets_.size() - 1; }
  std::size_t word_count() const noexcept { return words_; }

  /// Unchecked; see positions_of() for the validating lookup.
  std::span<const Position> postings(SymbolId symbol) const noexcept {
    return {positions_.data() + offsets_[symbol], offsets_[symbol + 1] - offsets_[symbol]};
  }
  std::span<const Word> plane(SymbolId symbol) const noexcept {
    return {planes_.data() + symbol * words_, words_};
  }

 private:
  friend PositionIndex build_index(const EncodedSequence& seq);

  AlphabetPtr alphabet_;
  std::size_t length_ = 0;
  std::size_t words_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Position> positions_;
  std::vector<Word> planes_;
};

/// Linear: one pass to size the posting lists, one to fill them.
inline PositionIndex build_index(const EncodedSequence& seq) {
  if (seq.empty()) throw Error(ErrorKind::EmptySequence, "cannot index an empty sequence");
  if (seq.length() > std::numeric_limits<Position>::max()) {
    throw std::length_error("sequence too long to index");
  }
  const std::size_t symbols = seq.alphabet()->size();
  const auto ids = seq.ids();

  PositionIndex index;
  index.alphabet_ = seq.alphabet();
  index.length_ = ids.size();
  index.words_ = words_for(ids.size());
  index.offsets_.assign(symbols + 1, 0);
  for (SymbolId s : ids) ++index.offsets_[s + 1];
  for (std::size_t s = 0; s < symbols; ++s) index.offsets_[s + 1] += index.offsets_[s];

  index.positions_.resize(ids.size());
  index.planes_.assign(symbols * index.words_, 0);
  std::vector<std::size_t> cursor(index.offsets_.begin(), index.offsets_.end() - 1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const SymbolId s = ids[i];
    index.positions_[cursor[s]++] = static_cast<Position>(i + 1);
    index.planes_[s * index.words_ + i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  return index;
}

inline std::span<const Position> positions_of(const PositionIndex& index, SymbolId symbol) {
  if (symbol >= index.symbol_count()) {
    throw Error(ErrorKind::UnknownSymbol, "symbol id " + std::to_string(symbol) +
                                              " out of range for alphabet of size " +
                                              std::to_string(index.symbol_count()));
  }
  return index.postings(symbol);
}

/// Postings rebuilt from the bit-planes alone.
inline std::vector<std::vector<Position>> postings_from_planes(const PositionIndex& index) {
  std::vector<std::vector<Position>> out(index.symbol_count());
  for (std::size_t s = 0; s < index.symbol_count(); ++s) {
    const auto plane = index.plane(static_cast<SymbolId>(s));
    for (std::size_t w = 0; w < plane.size(); ++w) {
      Word bits = plane[w];
      while (bits) {
        const int bit = std::countr_zero(bits);
        out[s].push_back(static_cast<Position>(w * kWordBits + bit + 1));
        bits &= bits - 1;
      }
    }
  }
  return out;
}

/// Position-wise decode of an index back into its sequence.
inline EncodedSequence decode_index(const PositionIndex& index) {
  std::vector<SymbolId> ids(index.length(), 0);
  for (std::size_t s = 0; s < index.symbol_count(); ++s) {
    for (Position p : index.postings(static_cast<SymbolId>(s))) ids[p - 1] = static_cast<SymbolId>(s);
  }
  return EncodedSequence(index.alphabet(), std::move(ids));
}

/// One-hot grid, highest position first:
///
///     pos A T G C
///      10 1 0 0 0
///     ...
///       1 1 0 0 0
inline std::string dump_table(const PositionIndex& index) {
  const auto& alphabet = *index.alphabet();
  const std::size_t width = std::to_string(index.length()).size();
  std::vector<SymbolId> at(index.length(), 0);
  for (std::size_t s = 0; s < index.symbol_count(); ++s) {
    for (Position p : index.postings(static_cast<SymbolId>(s))) at[p - 1] = static_cast<SymbolId>(s);
  }

  std::ostringstream out;
  out << std::string(width > 3 ? width - 3 : 0, ' ') << "pos";
  for (char c : alphabet.symbols()) out << ' ' << c;
  out << '\n';
  for (std::size_t pos = index.length(); pos >= 1; --pos) {
    const std::string label = std::to_string(pos);
    out << std::string(std::max<std::size_t>(width, 3) - label.size(), ' ') << label;
    for (std::size_t s = 0; s < alphabet.size(); ++s) out << ' ' << (at[pos - 1] == s ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

/// Inverse of dump_table. Rows may come in any order but must cover 1..N
/// exactly once with one set bit each.
inline EncodedSequence parse_table(const std::string& table, const AlphabetPtr& alphabet) {
  std::istringstream in(table);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedTable, "missing header");
  {
    std::istringstream header(line);
    std::string token;
    header >> token;
    for (char c : alphabet->symbols()) {
      if (!(header >> token) || token.size() != 1 || Alphabet::normalize(token[0]) != c) {
        throw Error(ErrorKind::MalformedTable, "header does not match alphabet");
      }
    }
  }
  std::vector<std::int32_t> slots;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::size_t pos = 0;
    if (!(row >> pos) || pos == 0) throw Error(ErrorKind::MalformedTable, "bad row: " + line);
    std::int32_t hit = -1;
    for (std::size_t s = 0; s < alphabet->size(); ++s) {
      int bit = 0;
      if (!(row >> bit) || (bit != 0 && bit != 1)) {
        throw Error(ErrorKind::MalformedTable, "bad cell in row: " + line);
      }
      if (bit == 1) {
        if (hit != -1) throw Error(ErrorKind::MalformedTable, "row is not one-hot: " + line);
        hit = static_cast<std::int32_t>(s);
      }
    }
    if (hit == -1) throw Error(ErrorKind::MalformedTable, "row is not one-hot: " + line);
    if (slots.size() < pos) slots.resize(pos, -1);
    if (slots[pos - 1] != -1) throw Error(ErrorKind::MalformedTable, "duplicate row " + line);
    slots[pos - 1] = hit;
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::EmptySequence, "table has no rows");
  if (rows != slots.size()) throw Error(ErrorKind::MalformedTable, "positions are not contiguous");
  std::vector<SymbolId> ids(slots.begin(), slots.end());
  return EncodedSequence(alphabet, std::move(ids));
}

/// Index sets in "1000(1,4,5,7,10)" form, one symbol per line.
inline std::string format_postings(const PositionIndex& index) {
  const auto& alphabet = *index.alphabet();
  std::ostringstream out;
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    const auto id = static_cast<SymbolId>(s);
    out << alphabet.symbol(id) << ' ' << alphabet.code(id) << '(';
    bool first = true;
    for (Position p : index.postings(id)) {
      if (!first) out << ',';
      out << p;
      first = false;
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace logmatch
