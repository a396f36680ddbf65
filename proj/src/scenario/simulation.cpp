#include "petrosim/scenario/simulation.hpp"

#include "petrosim/scenario/params_io.hpp"

#include <algorithm>
#include <cstdlib>

#ifndef PETROSIM_BUNDLED_DATA_DIR
#define PETROSIM_BUNDLED_DATA_DIR "data"
#endif

namespace petrosim::scenario {

std::filesystem::path data_dir() {
  if (const char *env = std::getenv("PETROSIM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return PETROSIM_BUNDLED_DATA_DIR;
}

std::filesystem::path resolve_data_path(const std::string &path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : data_dir() / p;
}

oil::OilParams resolve_params(const ScenarioConfig &config) {
  if (const auto *inline_params = std::get_if<oil::OilParams>(&config.params)) {
    return *inline_params;
  }
  const std::filesystem::path p(std::get<std::string>(config.params));
  return load_params(p.is_absolute() ? p : config.base_dir / p);
}

sd::Trajectory simulate_scenario(const ScenarioConfig &config, const oil::OilParams &params,
                                 const RunOverrides &overrides) {
  const double dt = overrides.dt.value_or(config.dt);
  const double horizon = overrides.horizon.value_or(config.horizon);
  if (!(dt > 0.0) || !(horizon >= dt)) {
    throw ValidationError("need dt > 0 and horizon >= dt");
  }
  std::vector<oil::ScheduledEvent> events = config.events;
  events.insert(events.end(), overrides.extra_events.begin(), overrides.extra_events.end());
  if (overrides.drop_events_past_horizon) {
    std::erase_if(events, [&](const oil::ScheduledEvent &e) { return e.time > horizon; });
  }
  for (const auto &e : events) {
    if (e.time > horizon) {
      throw OutOfRangeEvent("event on '" + e.target + "' lies past the horizon");
    }
  }
  const auto built = oil::build_oil_model(params, config.initial, events,
                                          {.dt = dt, .expectation_loops = overrides.expectation_loops});
  const auto model = sd::compile(built.spec);
  return sd::simulate(model, model.initial_state(0.0), horizon, built.events);
}

} // namespace petrosim::scenario
