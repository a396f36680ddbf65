#pragma once

#include "petrosim/data/date.hpp"
#include "petrosim/error.hpp"
#include "petrosim/oil/model.hpp"
#include "petrosim/oil/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace petrosim::scenario {

class SchemaError : public ValidationError {
public:
  SchemaError(const std::string &path, const std::string &key, const std::string &what);
  const std::string &path() const { return path_; }
  const std::string &key() const { return key_; }
  const std::string &detail() const { return detail_; }

private:
  std::string path_;
  std::string key_;
  std::string detail_;
};

class OutOfRangeEvent : public ValidationError {
public:
  using ValidationError::ValidationError;
};

struct ForecastVariant {
  std::string name;
  std::vector<oil::ScheduledEvent> events;

  bool operator==(const ForecastVariant &) const = default;
};

struct ScenarioConfig {
  std::string name;
  std::string description;
  data::Date t0;
  double horizon = 365.0;
  double dt = 1.0;
  /// Params file path (relative to the config's directory) or inline values.
  std::variant<std::string, oil::OilParams> params;
  oil::InitialState initial;
  std::vector<oil::ScheduledEvent> events;
  /// Observed price series; relative paths resolve against the data directory.
  std::optional<std::string> observed;
  /// Driver variants for forecasts; each adds its events to `events`.
  std::vector<ForecastVariant> variants;

  /// Directory of the file the config came from. Not serialized.
  std::filesystem::path base_dir;

  bool operator==(const ScenarioConfig &other) const;
};

/// Reads and validates a scenario file. Unknown keys are rejected.
ScenarioConfig parse_scenario(const std::filesystem::path &path);
ScenarioConfig parse_scenario_text(const std::string &text,
                                   const std::filesystem::path &base_dir = {});

/// JSON text that `parse_scenario_text` maps back to an equal config.
std::string write_scenario(const ScenarioConfig &config);

/// Horizon/dt sanity, event ranges and targets.
void validate(const ScenarioConfig &config);

} // namespace petrosim::scenario
