#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "logmatch/alphabet.hpp"
#include "logmatch/comparator.hpp"

namespace logmatch {

/// Reduced fraction with positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)

  Rational(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd128(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
    constexpr auto lo = std::numeric_limits<std::int64_t>::min();
    constexpr auto hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational out of range");
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
  }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
            static_cast<__int128>(a.den_) * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
            static_cast<__int128>(a.den_) * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_};
  }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct Membership {
  Rational match;     // r / m
  Rational mismatch;  // (m - r) / m
};

/// Membership grades generated from the pattern's own match/mismatch split.
/// They always sum to exactly 1.
inline Membership membership(const ComparisonCounts& counts) {
  if (counts.m == 0) throw std::domain_error("membership needs a non-empty pattern");
  const auto m = static_cast<__int128>(counts.m);
  return {Rational(static_cast<__int128>(counts.r), m),
          Rational(static_cast<__int128>(counts.m - counts.r), m)};
}

struct ScoreReport {
  ComparisonCounts counts;
  Rational mu_match;
  Rational mu_mismatch;
  Rational score;
  Rational match_percent;  // 100 r / n
};

/// S = r * (r/m) - (n - r) * ((m - r)/m) = (r^2 - (n-r)(m-r)) / m, evaluated
/// exactly from the integer counts.
inline ScoreReport score(const ComparisonCounts& counts) {
  if (!counts.valid()) {
    throw std::invalid_argument("invalid counts r=" + std::to_string(counts.r) +
                                " m=" + std::to_string(counts.m) + " n=" + std::to_string(counts.n));
  }
  const auto mu = membership(counts);
  const auto r = static_cast<__int128>(counts.r);
  const auto m = static_cast<__int128>(counts.m);
  const auto n = static_cast<__int128>(counts.n);
  return ScoreReport{
      counts,
      mu.match,
      mu.mismatch,
      Rational(r * r - (n - r) * (m - r), m),
      Rational(100 * r, n),
  };
}

inline ScoreReport score_from_sequences(const EncodedSequence& text, const EncodedSequence& pattern,
                                        Engine engine = Engine::Bitplanes) {
  return score(count(engine, text, pattern));
}

}  // namespace logmatch
