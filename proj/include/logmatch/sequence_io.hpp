#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logmatch/alphabet.hpp"

namespace logmatch {

struct SequenceRecord {
  std::string locus;
  std::string description;
  std::string residues;

  friend bool operator==(const SequenceRecord&, const SequenceRecord&) = default;
};

/// 1-based inclusive coordinates, so 541-560 spans 20 residues.
struct Region {
  std::size_t start = 1;
  std::size_t end = 1;

  Region() = default;
  Region(std::size_t first, std::size_t last) : start(first), end(last) {
    if (first < 1 || first > last) {
      throw Error(ErrorKind::InvalidRegion, "region " + std::to_string(first) + "-" +
                                                std::to_string(last) +
                                                " must satisfy 1 <= start <= end");
    }
  }

  std::size_t length() const noexcept { return end - start + 1; }
};

/// Parses "START-END".
inline Region parse_region(std::string_view text) {
  const auto dash = text.find('-');
  auto number = [&](std::string_view part) -> std::size_t {
    if (part.empty() || part.size() > 18) {
      throw Error(ErrorKind::InvalidRegion, "cannot parse region '" + std::string(text) + "'");
    }
    std::size_t value = 0;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(ErrorKind::InvalidRegion, "cannot parse region '" + std::string(text) + "'");
      }
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
  };
  if (dash == std::string_view::npos) {
    throw Error(ErrorKind::InvalidRegion, "region '" + std::string(text) + "' is not START-END");
  }
  return Region(number(text.substr(0, dash)), number(text.substr(dash + 1)));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Standard FASTA: '>' header lines open records, the first header token is
/// the locus, sequence lines are concatenated with whitespace removed.
/// Blank lines and ';' comment lines before the first record are ignored.
inline std::vector<SequenceRecord> parse_fasta(std::istream& in) {
  std::vector<SequenceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  auto close_record = [&] {
    if (!records.empty() && records.back().residues.empty()) {
      throw Error(ErrorKind::MalformedFasta,
                  "record '" + records.back().locus + "' has no sequence");
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    if (body.front() == '>') {
      close_record();
      const auto header = detail::trim(body.substr(1));
      const auto split = header.find_first_of(" \t");
      SequenceRecord record;
      record.locus = std::string(header.substr(0, split));
      if (split != std::string_view::npos) {
        record.description = std::string(detail::trim(header.substr(split)));
      }
      if (record.locus.empty()) {
        throw Error(ErrorKind::MalformedFasta,
                    "empty header on line " + std::to_string(line_no));
      }
      records.push_back(std::move(record));
      continue;
    }
    if (records.empty()) {
      if (body.front() == ';') continue;
      throw Error(ErrorKind::MalformedFasta,
                  "sequence data before first header on line " + std::to_string(line_no));
    }
    for (char c : body) {
      if (!std::isspace(static_cast<unsigned char>(c))) records.back().residues.push_back(c);
    }
  }
  close_record();
  if (records.empty()) throw Error(ErrorKind::MalformedFasta, "no records found");
  return records;
}

inline std::vector<SequenceRecord> parse_fasta(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fasta(in);
}

inline std::string write_fasta(const std::vector<SequenceRecord>& records, std::size_t width = 60) {
  std::string out;
  for (const auto& rec : records) {
    out += '>';
    out += rec.locus;
    if (!rec.description.empty()) {
      out += ' ';
      out += rec.description;
    }
    out += '\n';
    for (std::size_t i = 0; i < rec.residues.size(); i += width) {
      out.append(rec.residues, i, width);
      out += '\n';
    }
  }
  return out;
}

inline std::string extract_region(const SequenceRecord& record, const Region& region) {
  if (region.end > record.residues.size()) {
    throw RegionOutOfBoundsError(region.start, region.end, record.residues.size());
  }
  return record.residues.substr(region.start - 1, region.length());
}

struct MutatedPair {
  EncodedSequence original;
  EncodedSequence mutant;
};

/// Uniform random sequence plus a copy where each position is independently
/// substituted, with probability `substitution_rate`, by a uniformly chosen
/// different symbol. Deterministic for a given seed.
inline MutatedPair generate_mutated(std::uint64_t seed, const AlphabetPtr& alphabet,
                                    std::size_t length, double substitution_rate) {
  if (length < 1) throw std::invalid_argument("length must be at least 1");
  if (!(substitution_rate >= 0.0 && substitution_rate <= 1.0)) {
    throw std::invalid_argument("substitution rate must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  const auto k = static_cast<int>(alphabet->size());
  std::uniform_int_distribution<int> any_symbol(0, k - 1);
  std::uniform_int_distribution<int> other_symbol(0, k - 2);
  std::bernoulli_distribution substitute(substitution_rate);

  std::vector<SymbolId> original(length);
  for (auto& id : original) id = static_cast<SymbolId>(any_symbol(rng));
  std::vector<SymbolId> mutant = original;
  for (auto& id : mutant) {
    if (!substitute(rng)) continue;
    int pick = other_symbol(rng);
    if (pick >= id) ++pick;
    id = static_cast<SymbolId>(pick);
  }
  return {EncodedSequence(alphabet, std::move(original)),
          EncodedSequence(alphabet, std::move(mutant))};
}

// Remote retrieval. Network access is opt-in and goes through an injectable
// transport so tests never touch a live service.

inline constexpr const char* kEndpointEnv = "LOGMATCH_FETCH_ENDPOINT";
inline constexpr const char* kDefaultEndpoint =
    "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi";

inline std::string default_endpoint() {
  if (const char* env = std::getenv(kEndpointEnv); env && *env) return env;
  return kDefaultEndpoint;
}

struct FetchResponse {
  int status = 0;  // 0 means the transport could not reach the endpoint
  std::string body;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual FetchResponse get(const std::string& endpoint, const std::string& locus) = 0;
};

struct FetchOptions {
  bool allow_network = false;
  std::string endpoint = default_endpoint();
};

inline SequenceRecord fetch_record(const std::string& locus, const FetchOptions& options,
                                   Transport& transport) {
  if (!options.allow_network) {
    throw Error(ErrorKind::NetworkUnavailable, "network access is disabled");
  }
  const auto response = transport.get(options.endpoint, locus);
  if (response.status == 0) {
    throw Error(ErrorKind::NetworkUnavailable, "could not reach " + options.endpoint);
  }
  if (response.status == 400 || response.status == 404 ||
      detail::trim(response.body).empty()) {
    throw Error(ErrorKind::RecordNotFound, "no record for locus '" + locus + "'");
  }
  if (response.status != 200) {
    throw Error(ErrorKind::NetworkUnavailable,
                "endpoint returned HTTP " + std::to_string(response.status));
  }
  auto records = parse_fasta(std::string_view(response.body));
  return std::move(records.front());
}

}  // namespace logmatch
