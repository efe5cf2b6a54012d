#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mtsweep {

/// Signed span in whole milliseconds.
using DurationMs = std::int64_t;

inline constexpr DurationMs kMsPerSecond = 1000;
inline constexpr DurationMs kMsPerMinute = 60 * kMsPerSecond;
inline constexpr DurationMs kMsPerHour = 60 * kMsPerMinute;
inline constexpr DurationMs kMsPerDay = 24 * kMsPerHour;

/// Absolute point in time, milliseconds since the Unix epoch (UTC).
struct Instant {
  std::int64_t ms = 0;

  constexpr auto operator<=>(const Instant&) const = default;

  constexpr Instant operator+(DurationMs d) const { return Instant{ms + d}; }
  constexpr Instant operator-(DurationMs d) const { return Instant{ms - d}; }
  constexpr DurationMs operator-(Instant other) const { return ms - other.ms; }
};

/// Exact rational number of milliseconds.
///
/// Fair-share durations are spans divided by the number of concurrently
/// active items, so sums of them carry arbitrary denominators. The value is
/// kept exact and only rounded when serialized.
class ExactMs {
 public:
  using Rational = boost::multiprecision::cpp_rational;

  ExactMs() = default;
  explicit ExactMs(DurationMs whole) : value_(whole) {}
  ExactMs(DurationMs numerator, DurationMs denominator);

  static ExactMs span_share(DurationMs span, std::size_t ways);

  ExactMs& operator+=(const ExactMs& other) {
    value_ += other.value_;
    return *this;
  }
  friend ExactMs operator+(ExactMs a, const ExactMs& b) { return a += b; }
  friend ExactMs operator*(ExactMs a, std::int64_t k) {
    a.value_ *= k;
    return a;
  }

  friend bool operator==(const ExactMs& a, const ExactMs& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactMs& a, const ExactMs& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string numerator() const;
  std::string denominator() const;

  /// Nearest whole millisecond; ties round towards +infinity.
  DurationMs round_half_up() const;
  double to_double() const;
  /// "n" for integral values, "n/d" otherwise.
  std::string to_string() const;

  const Rational& rational() const { return value_; }

 private:
  explicit ExactMs(Rational r) : value_(std::move(r)) {}
  Rational value_{0};
};

/// Parses ISO-8601 date-time: `YYYY-MM-DD[T| ]hh:mm[:ss[.fraction]][Z|(+|-)hh[:]mm]`.
/// A missing offset is read as UTC. Fractions beyond milliseconds are rounded
/// half-up. Throws std::invalid_argument on malformed input.
Instant parse_iso8601(std::string_view text);

/// UTC rendering with millisecond precision, e.g. `2020-01-01T00:10:00.000Z`.
std::string format_iso8601(Instant t);

}  // namespace mtsweep
