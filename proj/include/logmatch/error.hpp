#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logmatch {

enum class ErrorKind {
  DuplicateSymbol,
  AlphabetTooSmall,
  ForeignSymbol,
  EmptySequence,
  UnknownSymbol,
  AlphabetMismatch,
  PatternLongerThanText,
  MalformedFasta,
  InvalidRegion,
  RegionOutOfBounds,
  RecordNotFound,
  NetworkUnavailable,
  EngineDisagreement,
  InvalidSchedule,
  MalformedTable,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorKind::AlphabetTooSmall: return "AlphabetTooSmall";
    case ErrorKind::ForeignSymbol: return "ForeignSymbol";
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::PatternLongerThanText: return "PatternLongerThanText";
    case ErrorKind::MalformedFasta: return "MalformedFasta";
    case ErrorKind::InvalidRegion: return "InvalidRegion";
    case ErrorKind::RegionOutOfBounds: return "RegionOutOfBounds";
    case ErrorKind::RecordNotFound: return "RecordNotFound";
    case ErrorKind::NetworkUnavailable: return "NetworkUnavailable";
    case ErrorKind::EngineDisagreement: return "EngineDisagreement";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Base of every error the library throws. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ForeignSymbolError : public Error {
 public:
  ForeignSymbolError(std::size_t position, char symbol)
      : Error(ErrorKind::ForeignSymbol,
              "character '" + std::string(1, symbol) + "' at position " +
                  std::to_string(position) + " is not in the alphabet"),
        position_(position),
        symbol_(symbol) {}

  /// 1-based offset into the raw input.
  std::size_t position() const noexcept { return position_; }
  char symbol() const noexcept { return symbol_; }

 private:
  std::size_t position_;
  char symbol_;
};

class RegionOutOfBoundsError : public Error {
 public:
  RegionOutOfBoundsError(std::size_t start, std::size_t end, std::size_t record_length)
      : Error(ErrorKind::RegionOutOfBounds,
              "region " + std::to_string(start) + "-" + std::to_string(end) +
                  " exceeds record length " + std::to_string(record_length)),
        record_length_(record_length) {}

  std::size_t record_length() const noexcept { return record_length_; }

 private:
  std::size_t record_length_;
};

}  // namespace logmatch
