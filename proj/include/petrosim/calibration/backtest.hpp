#pragma once

#include "petrosim/data/date.hpp"
#include "petrosim/data/time_series.hpp"
#include "petrosim/error.hpp"
#include "petrosim/oil/types.hpp"
#include "petrosim/scenario/config.hpp"
#include "petrosim/sd/engine.hpp"

#include <cstddef>
#include <span>

namespace petrosim::calibration {

struct BacktestMetrics {
  double mape = 0.0;                 // percent
  double rmse = 0.0;                 // units of the series
  double directional_accuracy = 0.0; // fraction of first differences with matching sign
  std::size_t points = 0;
};

class NoOverlap : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Metrics of paired samples. Needs at least two pairs and nonzero observations.
BacktestMetrics score(std::span<const double> simulated, std::span<const double> observed);

/// Samples `column` of `trajectory` (linear interpolation) at every
/// observation date inside the simulated span and scores it.
BacktestMetrics backtest(const sd::Trajectory &trajectory, const data::Date &t0,
                         const data::TimeSeries &observed, std::string_view column = "price");

/// Simulates `config` with `params` and scores the price path.
BacktestMetrics backtest(const oil::OilParams &params, const scenario::ScenarioConfig &config,
                         const data::TimeSeries &observed);

} // namespace petrosim::calibration
