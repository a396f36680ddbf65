#pragma once

#include "petrosim/oil/model.hpp"
#include "petrosim/oil/types.hpp"
#include "petrosim/scenario/config.hpp"
#include "petrosim/sd/engine.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace petrosim::scenario {

/// $PETROSIM_DATA_DIR when set, else the bundled data directory.
std::filesystem::path data_dir();

/// Absolute paths pass through; relative ones resolve against `data_dir()`.
std::filesystem::path resolve_data_path(const std::string &path);

/// Inline params, or the params file relative to the config's directory.
oil::OilParams resolve_params(const ScenarioConfig &config);

struct RunOverrides {
  std::optional<double> dt;
  std::optional<double> horizon;
  /// Appended to the config's events.
  std::vector<oil::ScheduledEvent> extra_events;
  /// Drop step events past the horizon instead of rejecting them.
  bool drop_events_past_horizon = false;
  bool expectation_loops = true;
};

/// build -> compile -> simulate for one scenario.
sd::Trajectory simulate_scenario(const ScenarioConfig &config, const oil::OilParams &params,
                                 const RunOverrides &overrides = {});

} // namespace petrosim::scenario
