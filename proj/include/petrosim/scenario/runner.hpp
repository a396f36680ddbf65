#pragma once

#include "petrosim/calibration/backtest.hpp"
#include "petrosim/scenario/config.hpp"
#include "petrosim/scenario/simulation.hpp"
#include "petrosim/sd/engine.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace petrosim::scenario {

struct RunReport {
  std::string scenario;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> files;
  std::size_t rows = 0;
  double final_price = 0.0;
  std::optional<calibration::BacktestMetrics> metrics;
};

/// Header of every trajectory file.
std::string trajectory_header();

/// `t` plus the oil-model columns, one row per grid time, shortest number
/// formatting. Identical inputs give identical bytes.
std::string format_trajectory(const sd::Trajectory &trajectory);

/// Two whitespace-separated columns, day and price, for gnuplot.
std::string format_price_dat(const sd::Trajectory &trajectory);

/// Writes trajectory.csv, price.dat and, with an observed series, metrics.json.
/// `observed_override` replaces the config's observed path.
RunReport run_scenario(const ScenarioConfig &config, const std::filesystem::path &out_dir,
                       const RunOverrides &overrides = {},
                       const std::optional<std::string> &observed_override = std::nullopt);

/// One trajectory per variant (or a single "baseline"), horizon forced to
/// `horizon` days; events past it are dropped.
std::vector<std::pair<std::string, sd::Trajectory>> forecast(const ScenarioConfig &config,
                                                             double horizon = 60.0);

/// Writes forecast_<variant>.csv per trajectory from `forecast`.
RunReport run_forecast(const ScenarioConfig &config, const std::filesystem::path &out_dir,
                       double horizon = 60.0);

/// Metrics as a JSON document.
std::string format_metrics(const std::string &scenario, const std::string &observed,
                           const calibration::BacktestMetrics &metrics);

} // namespace petrosim::scenario
