#pragma once

#include "petrosim/data/date.hpp"
#include "petrosim/error.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace petrosim::data {

struct Observation {
  Date date;
  double value = 0.0;

  bool operator==(const Observation &) const = default;
};

/// Dated observations, strictly increasing in date, all values finite.
struct TimeSeries {
  std::string name;
  std::string unit;
  std::vector<Observation> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool operator==(const TimeSeries &) const = default;
};

class ParseError : public ValidationError {
public:
  ParseError(const std::string &path, std::size_t line, const std::string &what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class DuplicateDate : public ValidationError {
public:
  explicit DuplicateDate(const Date &date);
  const Date &date() const { return date_; }

private:
  Date date_;
};

class UnitMismatch : public ValidationError {
public:
  UnitMismatch(const std::string &expected, const std::string &found);
};

/// Sorts by date, then rejects duplicates and non-finite values.
void normalize(TimeSeries &series);

/// Reads the series CSV format:
///
///   # name: wti_spot          (optional metadata comments)
///   # unit: USD/bbl
///   date,value
///   2008-05-30,127.35
///
/// `#` lines are allowed only before the header. A declared unit must equal
/// `expected_unit`; without one the series takes `expected_unit`.
TimeSeries load_series(const std::filesystem::path &path, std::string_view expected_unit);

/// Parses CSV text; `origin` labels errors.
TimeSeries parse_series(std::string_view text, std::string_view expected_unit,
                        const std::string &origin = "<memory>");

/// Writes the CSV format above with shortest round-trip number formatting.
void write_series(const std::filesystem::path &path, const TimeSeries &series);
std::string format_series(const TimeSeries &series);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

} // namespace petrosim::data
