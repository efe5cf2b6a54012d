#include "mtsweep/time.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace mtsweep {

namespace {

using boost::multiprecision::cpp_int;

cpp_int floor_div(const cpp_int& n, const cpp_int& d) {
  cpp_int q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2), m, d};
}

bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(std::int64_t y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument("invalid timestamp '" + std::string(text_) + "': " + what);
  }

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(what);
  }

  unsigned digits(std::size_t count, const char* what) {
    if (pos_ + count > text_.size()) fail(what);
    unsigned value = 0;
    const char* first = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, first + count, value);
    if (ec != std::errc{} || ptr != first + count) fail(what);
    pos_ += count;
    return value;
  }

  // Reads a run of digits after a decimal point; returns milliseconds rounded half-up.
  std::int64_t fraction_ms() {
    std::int64_t ms = 0;
    std::size_t n = 0;
    bool round_up = false;
    while (!done() && peek() >= '0' && peek() <= '9') {
      const int digit = text_[pos_++] - '0';
      if (n < 3) {
        ms = ms * 10 + digit;
      } else if (n == 3) {
        round_up = digit >= 5;
      }
      ++n;
    }
    if (n == 0) fail("empty fractional seconds");
    for (std::size_t i = n; i < 3; ++i) ms *= 10;
    return ms + (round_up ? 1 : 0);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactMs::ExactMs(DurationMs numerator, DurationMs denominator) {
  if (denominator == 0) throw std::invalid_argument("ExactMs: zero denominator");
  value_ = Rational(cpp_int(numerator), cpp_int(denominator));
}

ExactMs ExactMs::span_share(DurationMs span, std::size_t ways) {
  if (ways == 0) throw std::invalid_argument("ExactMs::span_share: zero ways");
  return ExactMs(span, static_cast<DurationMs>(ways));
}

std::string ExactMs::numerator() const {
  return boost::multiprecision::numerator(value_).str();
}

std::string ExactMs::denominator() const {
  return boost::multiprecision::denominator(value_).str();
}

DurationMs ExactMs::round_half_up() const {
  const cpp_int n = boost::multiprecision::numerator(value_);
  const cpp_int d = boost::multiprecision::denominator(value_);
  return floor_div(2 * n + d, 2 * d).convert_to<DurationMs>();
}

double ExactMs::to_double() const { return value_.convert_to<double>(); }

std::string ExactMs::to_string() const {
  const cpp_int d = boost::multiprecision::denominator(value_);
  if (d == 1) return numerator();
  return numerator() + "/" + d.str();
}

Instant parse_iso8601(std::string_view text) {
  Cursor c(text);
  const bool negative_year = c.accept('-');
  std::int64_t year = c.digits(4, "expected 4-digit year");
  if (negative_year) year = -year;
  c.expect('-', "expected '-' after year");
  const unsigned month = c.digits(2, "expected 2-digit month");
  c.expect('-', "expected '-' after month");
  const unsigned day = c.digits(2, "expected 2-digit day");
  if (month < 1 || month > 12) c.fail("month out of range");
  if (day < 1 || day > days_in_month(year, month)) c.fail("day out of range");

  if (!c.accept('T') && !c.accept('t') && !c.accept(' ')) c.fail("expected 'T' separator");
  const unsigned hour = c.digits(2, "expected 2-digit hour");
  c.expect(':', "expected ':' after hour");
  const unsigned minute = c.digits(2, "expected 2-digit minute");
  unsigned second = 0;
  std::int64_t ms = 0;
  if (c.accept(':')) {
    second = c.digits(2, "expected 2-digit second");
    if (c.accept('.') || c.accept(',')) ms = c.fraction_ms();
  }
  if (hour > 23 || minute > 59 || second > 60) c.fail("time of day out of range");

  std::int64_t offset_minutes = 0;
  if (c.accept('Z') || c.accept('z')) {
  } else if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.accept('-') ? -1 : (c.accept('+'), 1);
    const unsigned oh = c.digits(2, "expected 2-digit offset hours");
    c.accept(':');
    const unsigned om = c.digits(2, "expected 2-digit offset minutes");
    if (oh > 23 || om > 59) c.fail("offset out of range");
    offset_minutes = sign * static_cast<std::int64_t>(oh * 60 + om);
  }
  if (!c.done()) c.fail("trailing characters");

  const std::int64_t days = days_from_civil(year, month, day);
  const std::int64_t local_ms = days * kMsPerDay + hour * kMsPerHour + minute * kMsPerMinute +
                                second * kMsPerSecond + ms;
  return Instant{local_ms - offset_minutes * kMsPerMinute};
}

std::string format_iso8601(Instant t) {
  std::int64_t days = t.ms / kMsPerDay;
  std::int64_t rem = t.ms % kMsPerDay;
  if (rem < 0) {
    rem += kMsPerDay;
    --days;
  }
  const Civil date = civil_from_days(days);
  const auto hour = rem / kMsPerHour;
  const auto minute = rem % kMsPerHour / kMsPerMinute;
  const auto second = rem % kMsPerMinute / kMsPerSecond;
  const auto ms = rem % kMsPerSecond;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                static_cast<long long>(date.year), date.month, date.day,
                static_cast<long long>(hour), static_cast<long long>(minute),
                static_cast<long long>(second), static_cast<long long>(ms));
  return buf;
}

}  // namespace mtsweep
