#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace petrosim::data {

/// Proleptic Gregorian calendar date.
class Date {
public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);

  /// Parses YYYY-MM-DD; nullopt on malformed or impossible dates.
  static std::optional<Date> parse(std::string_view text);
  static Date from_serial(std::int64_t days);

  int year() const { return year_; }
  unsigned month() const { return month_; }
  unsigned day() const { return day_; }

  /// Days since 1970-01-01.
  std::int64_t serial() const;
  std::string to_string() const;

  Date plus_days(std::int64_t days) const { return from_serial(serial() + days); }

  auto operator<=>(const Date &) const = default;

private:
  int year_ = 1970;
  unsigned month_ = 1;
  unsigned day_ = 1;
};

/// Signed day count b - a.
inline std::int64_t days_between(const Date &a, const Date &b) { return b.serial() - a.serial(); }

} // namespace petrosim::data
