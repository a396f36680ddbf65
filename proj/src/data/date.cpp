#include "petrosim/data/date.hpp"

#include "petrosim/error.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace petrosim::data {

namespace {

std::chrono::year_month_day to_ymd(int y, unsigned m, unsigned d) {
  return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                     std::chrono::day{d}};
}

template <class T> bool parse_digits(std::string_view text, T &out) {
  if (text.empty()) {
    return false;
  }
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      return false;
    }
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

} // namespace

Date::Date(int year, unsigned month, unsigned day) : year_(year), month_(month), day_(day) {
  if (!to_ymd(year, month, day).ok()) {
    throw ValidationError("invalid calendar date");
  }
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  if (!to_ymd(y, m, d).ok()) {
    return std::nullopt;
  }
  return Date(y, m, d);
}

Date Date::from_serial(std::int64_t days) {
  const std::chrono::sys_days sd{std::chrono::days{days}};
  const std::chrono::year_month_day ymd{sd};
  return Date(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day()));
}

std::int64_t Date::serial() const {
  const std::chrono::sys_days sd{to_ymd(year_, month_, day_)};
  return sd.time_since_epoch().count();
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year_, month_, day_);
  return buf;
}

} // namespace petrosim::data
