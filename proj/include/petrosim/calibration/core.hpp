#pragma once

#include "petrosim/calibration/ols.hpp"
#include "petrosim/data/date.hpp"
#include "petrosim/data/time_series.hpp"
#include "petrosim/error.hpp"
#include "petrosim/oil/types.hpp"

#include <optional>
#include <vector>

namespace petrosim::calibration {

class InsufficientOverlap : public ValidationError {
public:
  using ValidationError::ValidationError;
};

struct DepressionWindow {
  double start = 0.0;    // days from the window start
  double duration = 0.0; // days
};

struct CalibrationConfig {
  data::Date start;
  data::Date end;
  /// Shortest usable common coverage, in days.
  double min_window = 60.0;
  /// Starting point for every coefficient not fitted here. Its taus are used
  /// to build the smoothed regressors.
  oil::OilParams base;
  /// Keep base.alpha_p instead of fitting it.
  bool hold_alpha_p = false;
  /// Keep base.eps_s, base.eps_d and base trends instead of fitting them.
  bool hold_elasticities = false;
  /// Adds a depression indicator to the expectation stage.
  std::optional<DepressionWindow> depression;
};

struct CalibrationResult {
  oil::OilParams params;
  /// Absent when alpha_p is held.
  std::optional<FitReport> price_fit;
  std::optional<FitReport> supply_fit;
  std::optional<FitReport> demand_fit;
  /// Absent when there are no driver channels.
  std::optional<FitReport> expectation_fit;
  data::Date first;
  data::Date last;
  double p_ref = 0.0;
};

/// Staged least-squares fit of the market model on the common window:
///   price:        dlnP/dt  on [1, D/S - 1]            -> alpha_p
///   supply:       dlnS/dt  on [1, smooth(ln P/p_ref)] -> eps_s, supply trend
///   demand:       dlnD/dt  on [1, smooth(ln P/p_ref)] -> eps_d, demand trend
///   expectations: price residual on driver channels    -> w_dep, w_growth
/// p_ref is the window mean price. Growth series are fractions/year; their
/// smoothed derivatives, summed, form the growth channel.
CalibrationResult calibrate_core(const data::TimeSeries &price, const data::TimeSeries &supply,
                                 const data::TimeSeries &demand,
                                 const std::vector<data::TimeSeries> &growth,
                                 const CalibrationConfig &config);

/// Exponential growth rate (fraction/year) of `series` over [start, end]:
/// slope of ln(value) against years.
FitReport calibrate_trend(const data::TimeSeries &series, const data::Date &start,
                          const data::Date &end);

} // namespace petrosim::calibration
