#include "petrosim/data/resample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace petrosim::data {

CoverageGap::CoverageGap(const std::string &series, double first_missing_day, const Date &t0)
    : ValidationError([&] {
        std::ostringstream os;
        os << "series '" << series << "' does not cover day " << first_missing_day << " ("
           << t0.plus_days(static_cast<std::int64_t>(std::floor(first_missing_day))).to_string()
           << ")";
        return os.str();
      }()),
      day_(first_missing_day) {}

double interpolate_at(const TimeSeries &series, const Date &t0, double day) {
  const auto &pts = series.points;
  if (pts.empty()) {
    throw CoverageGap(series.name, day, t0);
  }
  const auto origin = t0.serial();
  auto offset = [&](const Observation &o) { return static_cast<double>(o.date.serial() - origin); };
  if (day < offset(pts.front()) || day > offset(pts.back())) {
    throw CoverageGap(series.name, day, t0);
  }
  // First point strictly after `day`.
  auto hi = std::upper_bound(pts.begin(), pts.end(), day,
                             [&](double d, const Observation &o) { return d < offset(o); });
  if (hi == pts.begin()) {
    return pts.front().value;
  }
  auto lo = std::prev(hi);
  const double x0 = offset(*lo);
  if (hi == pts.end() || x0 == day) {
    return lo->value;
  }
  const double x1 = offset(*hi);
  const double w = (day - x0) / (x1 - x0);
  const double v = lo->value + w * (hi->value - lo->value);
  return std::clamp(v, std::min(lo->value, hi->value), std::max(lo->value, hi->value));
}

std::vector<double> resample(const TimeSeries &series, const Date &t0, double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon >= 0.0)) {
    throw ValidationError("resample needs dt > 0 and horizon >= 0");
  }
  const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
  std::vector<double> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    out.push_back(interpolate_at(series, t0, static_cast<double>(k) * dt));
  }
  return out;
}

} // namespace petrosim::data
