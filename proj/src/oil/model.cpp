#include "petrosim/oil/model.hpp"

#include "petrosim/oil/expectations.hpp"
#include "petrosim/oil/market.hpp"
#include "petrosim/sd/builtins.hpp"

#include <algorithm>
#include <cmath>

namespace petrosim::oil {

namespace {

struct PulseTerm {
  double start;
  double duration;
  double value;
};

std::string level_name(std::string_view target) { return std::string(target) + ".level"; }
std::string shock_name(Component c) { return std::string(name(c)) + ".shock"; }
std::string shock_level_name(Component c) { return shock_name(c) + ".level"; }
std::string shock_applied_name(Component c) { return std::string(name(c)) + ".shock_applied"; }
std::string shock_inflow_name(Component c) { return std::string(name(c)) + ".shock_inflow"; }
std::string flow_name(Component c) { return std::string(name(c)) + ".flow"; }

bool is_target(std::string_view target) {
  return parse_driver(target).has_value() || parse_component(target).has_value();
}

std::vector<PulseTerm> pulses_for(std::span<const ScheduledEvent> events, std::string_view target) {
  std::vector<PulseTerm> out;
  for (const auto &e : events) {
    if (e.kind == EventKind::pulse && e.target == target) {
      out.push_back({e.time, e.duration, e.value});
    }
  }
  return out;
}

// Value of a scheduled signal at t = 0, used to initialise the smooths that
// read it (SD convention: a smooth starts at its input).
double initial_value(std::span<const ScheduledEvent> events, std::string_view target, double dt) {
  double level = 0.0;
  double pulses = 0.0;
  for (const auto &e : events) {
    if (e.target != target) {
      continue;
    }
    if (e.kind == EventKind::step && sd::snap_to_grid(e.time, dt) == 0) {
      level = e.value;
    } else if (e.kind == EventKind::pulse) {
      pulses += e.value * sd::pulse(e.time, e.duration, 0.0);
    }
  }
  return level + pulses;
}

// `<target>` = `<target>.level` + sum of its pulses.
void add_scheduled_signal(sd::ModelSpec &spec, const std::string &signal,
                          const std::string &level, std::vector<PulseTerm> pulses,
                          const std::string &unit) {
  spec.add_constant(level, 0.0, unit);
  spec.add_auxiliary(
      signal, {level},
      [pulses = std::move(pulses)](const sd::EvalContext &in) {
        double v = in[0];
        for (const auto &p : pulses) {
          v += p.value * sd::pulse(p.start, p.duration, in.t);
        }
        return v;
      },
      unit);
}

} // namespace

std::string_view to_string(EventKind kind) {
  return kind == EventKind::step ? "step" : "pulse";
}

UnknownTarget::UnknownTarget(const std::string &target)
    : ValidationError("unknown event target '" + target + "'") {}

const std::vector<std::string> &trajectory_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c = {"price", "TOS", "TOD", "ExS", "ExD"};
    for (Component comp : kComponents) {
      c.emplace_back(name(comp));
    }
    c.emplace_back("actual_supply");
    c.emplace_back("actual_demand");
    return c;
  }();
  return columns;
}

void validate_events(std::span<const ScheduledEvent> events) {
  std::vector<const ScheduledEvent *> depression_pulses;
  bool depression_step_on = false;
  for (const auto &e : events) {
    if (!is_target(e.target)) {
      throw UnknownTarget(e.target);
    }
    if (!std::isfinite(e.time) || e.time < 0.0) {
      throw ValidationError("event on '" + e.target + "' has an invalid time");
    }
    if (!std::isfinite(e.value)) {
      throw ValidationError("event on '" + e.target + "' has a non-finite value");
    }
    if (e.kind == EventKind::pulse && !(std::isfinite(e.duration) && e.duration >= 0.0)) {
      throw ValidationError("pulse on '" + e.target + "' needs a duration >= 0");
    }
    const auto driver = parse_driver(e.target);
    if (driver == Driver::econ_depression) {
      if (e.kind == EventKind::pulse) {
        if (e.value != 1.0) {
          throw ValidationError("econ_depression pulses must have value 1");
        }
        depression_pulses.push_back(&e);
      } else {
        if (e.value != 0.0 && e.value != 1.0) {
          throw ValidationError("econ_depression steps must set 0 or 1");
        }
        depression_step_on = depression_step_on || e.value == 1.0;
      }
    }
    if ((driver == Driver::geopolitical_upset || driver == Driver::policy_effect) &&
        e.value < 0.0) {
      throw ValidationError("'" + e.target + "' must stay >= 0");
    }
  }
  if (depression_step_on && !depression_pulses.empty()) {
    throw ValidationError("econ_depression cannot mix a level of 1 with pulses");
  }
  std::sort(depression_pulses.begin(), depression_pulses.end(),
            [](const ScheduledEvent *a, const ScheduledEvent *b) { return a->time < b->time; });
  for (std::size_t i = 1; i < depression_pulses.size(); ++i) {
    const auto *prev = depression_pulses[i - 1];
    if (depression_pulses[i]->time < prev->time + prev->duration) {
      throw ValidationError("econ_depression pulses overlap");
    }
  }
}

BuiltModel build_oil_model(const OilParams &params, const InitialState &init,
                           std::span<const ScheduledEvent> events, const BuildOptions &options) {
  params.validate();
  validate_events(events);
  if (!(init.price > 0.0) || !std::isfinite(init.price)) {
    throw ValidationError("initial price must be > 0");
  }
  for (Component c : kComponents) {
    const double level = init.level(c);
    if (!std::isfinite(level) || level < 0.0) {
      throw ValidationError("initial level of " + std::string(name(c)) + " must be >= 0");
    }
    for (const auto &e : events) {
      if (e.target == name(c) && e.value < 0.0 && -e.value >= level) {
        throw ValidationError("shock on " + std::string(name(c)) +
                              " would exhaust the component");
      }
    }
  }

  const double dt = options.dt;
  const double p_ref = params.p_ref.value_or(init.price);
  const OilParams p = params;

  BuiltModel out{sd::ModelSpec(dt), {}};
  auto &spec = out.spec;

  // Driver signals and component shock signals.
  for (Driver d : kDrivers) {
    const std::string signal(name(d));
    add_scheduled_signal(spec, signal, level_name(signal), pulses_for(events, signal), "");
  }
  for (Component c : kComponents) {
    add_scheduled_signal(spec, shock_name(c), shock_level_name(c), pulses_for(events, name(c)),
                         "mb/d");
  }
  for (const auto &e : events) {
    if (e.kind != EventKind::step) {
      continue;
    }
    const auto comp = parse_component(e.target);
    out.events.push_back({e.time, comp ? shock_level_name(*comp) : level_name(e.target), e.value});
  }

  auto driver0 = [&](Driver d) { return initial_value(events, name(d), dt); };

  // Expectation memories.
  spec.add_smooth("expect.opec", "opec_decision", p.tau_exp_s, driver0(Driver::opec_decision));
  spec.add_smooth("expect.geo", "geopolitical_upset", p.tau_exp_s,
                  driver0(Driver::geopolitical_upset));
  spec.add_smooth("expect.geo_delayed", "geopolitical_upset", p.tau_smuggle_delay,
                  driver0(Driver::geopolitical_upset));
  spec.add_smooth("expect.policy", "policy_effect", p.tau_policy_fast,
                  driver0(Driver::policy_effect));
  spec.add_smooth("policy.slow", "policy_effect", p.tau_policy_slow,
                  driver0(Driver::policy_effect));
  spec.add_smoothed_derivative("expect.growth_eus", "growth_eus", p.tau_exp_d,
                               driver0(Driver::growth_eus), "1/yr/day");
  spec.add_smoothed_derivative("expect.growth_ribc", "growth_ribc", p.tau_exp_d,
                               driver0(Driver::growth_ribc), "1/yr/day");

  if (options.expectation_loops) {
    spec.add_auxiliary("ExS", {"expect.opec", "expect.geo"},
                       [p](const sd::EvalContext &in) { return supply_expectation(p, in[0], in[1]); });
    spec.add_auxiliary("ExD",
                       {"expect.growth_eus", "expect.growth_ribc", "econ_depression",
                        "expect.policy"},
                       [p](const sd::EvalContext &in) {
                         return demand_expectation(p, in[0] + in[1], in[2], in[3]);
                       });
  } else {
    spec.add_auxiliary("ExS", {}, [](const sd::EvalContext &) { return 1.0; });
    spec.add_auxiliary("ExD", {}, [](const sd::EvalContext &) { return 1.0; });
  }

  // Aggregates.
  spec.add_auxiliary("supply_baseline", {"s_opec", "s_us", "s_other", "s_smuggled", "s_spare"},
                     [](const sd::EvalContext &in) {
                       return total_expected_supply({in[0], in[1], in[2], in[3], in[4]});
                     },
                     "mb/d");
  spec.add_auxiliary("demand_baseline", {"d_eus", "d_ribc", "d_other"},
                     [](const sd::EvalContext &in) {
                       return total_expected_demand({in[0], in[1], in[2]});
                     },
                     "mb/d");
  spec.add_auxiliary("TOS", {"supply_baseline", "ExS"},
                     [](const sd::EvalContext &in) { return in[0] * in[1]; }, "mb/d");
  spec.add_auxiliary("TOD", {"demand_baseline", "ExD"},
                     [](const sd::EvalContext &in) { return in[0] * in[1]; }, "mb/d");
  spec.add_auxiliary("actual_supply", {"TOS", "ExS"},
                     [](const sd::EvalContext &in) { return actual_supply(in[0], in[1]); }, "mb/d");
  spec.add_auxiliary("actual_demand", {"TOD", "ExD"},
                     [](const sd::EvalContext &in) { return actual_demand(in[0], in[1]); }, "mb/d");

  // Price formation.
  spec.add_flow("price_rate", {"price", "TOD", "TOS"},
                [p](const sd::EvalContext &in) { return price_rate(in[0], in[1], in[2], p.alpha_p); },
                "USD/bbl/day");
  spec.add_stock("price", init.price, {"price_rate"},
                 [](const sd::EvalContext &in) { return in[0]; }, "USD/bbl");
  spec.add_auxiliary("log_price_gap", {"price"}, [p_ref](const sd::EvalContext &in) {
    if (!(in[0] > 0.0)) {
      throw NonPositivePrice(in[0]);
    }
    return std::log(in[0] / p_ref);
  });
  spec.add_smooth("price_signal", "log_price_gap", p.tau_price_perception,
                  std::log(init.price / p_ref));

  // Components.
  for (Component c : kComponents) {
    const std::string comp(name(c));
    spec.add_flow(shock_inflow_name(c), {shock_name(c), shock_applied_name(c)},
                  [tau = p.tau_shock](const sd::EvalContext &in) { return (in[0] - in[1]) / tau; },
                  "mb/d/day");
    spec.add_stock(shock_applied_name(c), 0.0, {shock_inflow_name(c)},
                   [](const sd::EvalContext &in) { return in[0]; }, "mb/d");

    const double trend = p.trends[idx(c)];
    const double elasticity = is_supply(c) ? p.eps_s : -p.eps_d;
    std::vector<std::string> inputs = {comp, "price_signal", shock_inflow_name(c)};
    // Extra relative rate (1/yr) from driver couplings.
    double coupling_gain = 0.0;
    switch (c) {
    case Component::s_opec:
      inputs.emplace_back("expect.geo");
      coupling_gain = -p.geo_opec_suppression;
      break;
    case Component::s_smuggled:
      inputs.emplace_back("expect.geo_delayed");
      coupling_gain = p.geo_smuggled_gain;
      break;
    case Component::s_spare:
      inputs.emplace_back("expect.opec");
      coupling_gain = p.opec_spare_gain;
      break;
    case Component::d_eus:
      inputs.emplace_back("policy.slow");
      coupling_gain = -p.policy_decay;
      break;
    default:
      break;
    }
    spec.add_flow(flow_name(c), inputs,
                  [trend, elasticity, coupling_gain, tau = p.tau_price_response](
                      const sd::EvalContext &in) {
                    double rate = component_growth_rate(trend, elasticity, in[1], tau);
                    if (in.inputs.size() > 3) {
                      rate += coupling_gain * in[3] / 365.0;
                    }
                    return in[0] * rate + in[2];
                  },
                  "mb/d/day");
    spec.add_stock(comp, init.level(c), {flow_name(c)},
                   [](const sd::EvalContext &in) { return in[0]; }, "mb/d");
  }

  return out;
}

} // namespace petrosim::oil
