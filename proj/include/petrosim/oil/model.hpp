#pragma once

#include "petrosim/oil/types.hpp"
#include "petrosim/sd/engine.hpp"
#include "petrosim/sd/model.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace petrosim::oil {

enum class EventKind { step, pulse };

std::string_view to_string(EventKind kind);

/// A timed change to a driver or a component.
///
/// step:  from `time` on, the target's level is `value`. For a component the
///        level is an exogenous shock in mb/d, phased in over `tau_shock`.
/// pulse: adds `value` on [time, time + duration).
struct ScheduledEvent {
  double time = 0.0;
  EventKind kind = EventKind::step;
  std::string target;
  double value = 0.0;
  double duration = 0.0;

  bool operator==(const ScheduledEvent &) const = default;
};

class UnknownTarget : public ValidationError {
public:
  explicit UnknownTarget(const std::string &target);
};

struct BuildOptions {
  double dt = 1.0;
  /// false replaces ExS and ExD by the constant 1.
  bool expectation_loops = true;
};

struct BuiltModel {
  sd::ModelSpec spec;
  /// Step events translated to engine events on `<target>.level` constants.
  sd::EventList events;
};

/// Names of the columns every oil-model trajectory exposes, in output order.
const std::vector<std::string> &trajectory_columns();

/// Checks targets, kinds and the econ_depression {0,1} rule.
void validate_events(std::span<const ScheduledEvent> events);

BuiltModel build_oil_model(const OilParams &params, const InitialState &init,
                           std::span<const ScheduledEvent> events, const BuildOptions &options = {});

} // namespace petrosim::oil
