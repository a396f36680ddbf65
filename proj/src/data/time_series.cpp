#include "petrosim/data/time_series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace petrosim::data {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// "# key: value" -> (key, value)
bool parse_meta(std::string_view comment, std::string_view key, std::string &out) {
  comment = trim(comment.substr(1));
  if (comment.substr(0, key.size()) != key) {
    return false;
  }
  comment.remove_prefix(key.size());
  comment = trim(comment);
  if (comment.empty() || comment.front() != ':') {
    return false;
  }
  out = std::string(trim(comment.substr(1)));
  return true;
}

} // namespace

ParseError::ParseError(const std::string &path, std::size_t line, const std::string &what)
    : ValidationError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

DuplicateDate::DuplicateDate(const Date &date)
    : ValidationError("duplicate date " + date.to_string()), date_(date) {}

UnitMismatch::UnitMismatch(const std::string &expected, const std::string &found)
    : ValidationError("unit mismatch: expected '" + expected + "', file declares '" + found +
                      "'") {}

void normalize(TimeSeries &series) {
  for (const auto &p : series.points) {
    if (!std::isfinite(p.value)) {
      throw ValidationError("series '" + series.name + "' has a non-finite value on " +
                            p.date.to_string());
    }
  }
  std::stable_sort(series.points.begin(), series.points.end(),
                   [](const Observation &a, const Observation &b) { return a.date < b.date; });
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    if (series.points[i].date == series.points[i - 1].date) {
      throw DuplicateDate(series.points[i].date);
    }
  }
}

TimeSeries parse_series(std::string_view text, std::string_view expected_unit,
                        const std::string &origin) {
  TimeSeries series;
  std::string declared_unit;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    if (line.front() == '#') {
      if (header_seen) {
        throw ParseError(origin, line_no, "comment after header");
      }
      std::string value;
      if (parse_meta(line, "unit", value)) {
        declared_unit = value;
      } else if (parse_meta(line, "name", value)) {
        series.name = value;
      }
      continue;
    }
    if (!header_seen) {
      if (line != "date,value") {
        throw ParseError(origin, line_no, "expected header 'date,value'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(origin, line_no, "expected two fields");
    }
    const auto date = Date::parse(trim(line.substr(0, comma)));
    if (!date) {
      throw ParseError(origin, line_no, "bad date '" + std::string(line.substr(0, comma)) + "'");
    }
    const std::string_view field = trim(line.substr(comma + 1));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
      throw ParseError(origin, line_no, "bad value '" + std::string(field) + "'");
    }
    series.points.push_back({*date, value});
  }
  if (!header_seen) {
    throw ParseError(origin, line_no, "missing header 'date,value'");
  }
  if (!declared_unit.empty() && declared_unit != expected_unit) {
    throw UnitMismatch(std::string(expected_unit), declared_unit);
  }
  series.unit = std::string(expected_unit);
  normalize(series);
  return series;
}

TimeSeries load_series(const std::filesystem::path &path, std::string_view expected_unit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot read series file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  auto series = parse_series(buf.str(), expected_unit, path.string());
  if (series.name.empty()) {
    series.name = path.stem().string();
  }
  return series;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_series(const TimeSeries &series) {
  std::string out;
  if (!series.name.empty()) {
    out += "# name: " + series.name + "\n";
  }
  if (!series.unit.empty()) {
    out += "# unit: " + series.unit + "\n";
  }
  out += "date,value\n";
  for (const auto &p : series.points) {
    out += p.date.to_string();
    out += ',';
    out += format_number(p.value);
    out += '\n';
  }
  return out;
}

void write_series(const std::filesystem::path &path, const TimeSeries &series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write series file " + path.string());
  }
  out << format_series(series);
}

} // namespace petrosim::data
