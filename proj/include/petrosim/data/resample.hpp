#pragma once

#include "petrosim/data/date.hpp"
#include "petrosim/data/time_series.hpp"

#include <vector>

namespace petrosim::data {

class CoverageGap : public ValidationError {
public:
  CoverageGap(const std::string &series, double first_missing_day, const Date &t0);
  double first_missing_day() const { return day_; }

private:
  double day_;
};

/// Linear interpolation onto t0 + k * dt, k = 0..floor(horizon / dt).
/// Grid points outside the observed span throw CoverageGap.
std::vector<double> resample(const TimeSeries &series, const Date &t0, double horizon, double dt);

/// Linear interpolation at `day` days after `t0`; CoverageGap outside the span.
double interpolate_at(const TimeSeries &series, const Date &t0, double day);

} // namespace petrosim::data
