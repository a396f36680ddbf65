#include "petrosim/scenario/config.hpp"

#include "petrosim/scenario/params_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace petrosim::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

SchemaError::SchemaError(const std::string &path, const std::string &key, const std::string &what)
    : ValidationError(path + (key.empty() ? "" : "." + key) + ": " + what), path_(path), key_(key),
      detail_(what) {}

bool ScenarioConfig::operator==(const ScenarioConfig &o) const {
  return name == o.name && description == o.description && t0 == o.t0 && horizon == o.horizon &&
         dt == o.dt && params == o.params && initial == o.initial && events == o.events &&
         observed == o.observed && variants == o.variants;
}

namespace {

void only_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed) {
  if (!j.is_object()) {
    throw SchemaError(where, "", "expected an object");
  }
  for (const auto &[key, value] : j.items()) {
    bool ok = false;
    for (const char *a : allowed) {
      ok = ok || key == a;
    }
    if (!ok) {
      throw SchemaError(where, key, "unknown key");
    }
  }
}

const json &required(const json &j, const std::string &where, const char *key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(where, key, "missing required key");
  }
  return *it;
}

double number(const json &j, const std::string &where, const std::string &key) {
  if (!j.is_number()) {
    throw SchemaError(where, key, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(where, key, "expected a finite number");
  }
  return v;
}

std::string text(const json &j, const std::string &where, const std::string &key) {
  if (!j.is_string()) {
    throw SchemaError(where, key, "expected a string");
  }
  return j.get<std::string>();
}

oil::ScheduledEvent parse_event(const json &j, const std::string &where) {
  only_keys(j, where, {"time", "kind", "target", "value", "duration"});
  oil::ScheduledEvent e;
  e.time = number(required(j, where, "time"), where, "time");
  const auto kind = text(required(j, where, "kind"), where, "kind");
  if (kind == "step") {
    e.kind = oil::EventKind::step;
    if (j.contains("duration")) {
      throw SchemaError(where, "duration", "only pulse events take a duration");
    }
  } else if (kind == "pulse") {
    e.kind = oil::EventKind::pulse;
    e.duration = number(required(j, where, "duration"), where, "duration");
  } else {
    throw SchemaError(where, "kind", "expected \"step\" or \"pulse\"");
  }
  e.target = text(required(j, where, "target"), where, "target");
  e.value = number(required(j, where, "value"), where, "value");
  return e;
}

std::vector<oil::ScheduledEvent> parse_events(const json &j, const std::string &where) {
  if (!j.is_array()) {
    throw SchemaError(where, "", "expected an array");
  }
  std::vector<oil::ScheduledEvent> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_event(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

oil::InitialState parse_initial(const json &j, const std::string &where) {
  only_keys(j, where, {"price", "supply", "demand"});
  oil::InitialState init;
  init.price = number(required(j, where, "price"), where, "price");
  const auto &supply = required(j, where, "supply");
  const auto &demand = required(j, where, "demand");
  only_keys(supply, where + ".supply", {"s_opec", "s_us", "s_other", "s_smuggled", "s_spare"});
  only_keys(demand, where + ".demand", {"d_eus", "d_ribc", "d_other"});
  for (auto c : oil::kComponents) {
    const std::string key(oil::name(c));
    const auto &block = oil::is_supply(c) ? supply : demand;
    const std::string sub = where + (oil::is_supply(c) ? ".supply" : ".demand");
    init.set_level(c, number(required(block, sub, key.c_str()), sub, key));
  }
  return init;
}

ordered_json event_json(const oil::ScheduledEvent &e) {
  ordered_json j;
  j["time"] = e.time;
  j["kind"] = std::string(oil::to_string(e.kind));
  j["target"] = e.target;
  j["value"] = e.value;
  if (e.kind == oil::EventKind::pulse) {
    j["duration"] = e.duration;
  }
  return j;
}

ordered_json events_json(const std::vector<oil::ScheduledEvent> &events) {
  ordered_json arr = ordered_json::array();
  for (const auto &e : events) {
    arr.push_back(event_json(e));
  }
  return arr;
}

} // namespace

ScenarioConfig parse_scenario_text(const std::string &source, const std::filesystem::path &base_dir) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error &e) {
    throw SchemaError("$", "", std::string("malformed JSON: ") + e.what());
  }
  const std::string root = "$";
  only_keys(j, root,
            {"name", "description", "t0", "horizon", "dt", "params", "initial", "events", "observed",
             "variants"});

  ScenarioConfig c;
  c.base_dir = base_dir;
  c.name = text(required(j, root, "name"), root, "name");
  if (j.contains("description")) {
    c.description = text(j["description"], root, "description");
  }
  const auto t0 = text(required(j, root, "t0"), root, "t0");
  const auto date = data::Date::parse(t0);
  if (!date) {
    throw SchemaError(root, "t0", "expected a YYYY-MM-DD date");
  }
  c.t0 = *date;
  c.horizon = number(required(j, root, "horizon"), root, "horizon");
  if (j.contains("dt")) {
    c.dt = number(j["dt"], root, "dt");
  }
  const auto &params = required(j, root, "params");
  if (params.is_string()) {
    c.params = params.get<std::string>();
  } else if (params.is_object()) {
    c.params = params_from_json(params, "$.params");
  } else {
    throw SchemaError(root, "params", "expected a file path or an object");
  }
  c.initial = parse_initial(required(j, root, "initial"), "$.initial");
  if (j.contains("events")) {
    c.events = parse_events(j["events"], "$.events");
  }
  if (j.contains("observed")) {
    c.observed = text(j["observed"], root, "observed");
  }
  if (j.contains("variants")) {
    const auto &vs = j["variants"];
    if (!vs.is_array()) {
      throw SchemaError(root, "variants", "expected an array");
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string where = "$.variants[" + std::to_string(i) + "]";
      only_keys(vs[i], where, {"name", "events"});
      ForecastVariant v;
      v.name = text(required(vs[i], where, "name"), where, "name");
      if (vs[i].contains("events")) {
        v.events = parse_events(vs[i]["events"], where + ".events");
      }
      c.variants.push_back(std::move(v));
    }
  }
  validate(c);
  return c;
}

ScenarioConfig parse_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot read scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str(), path.parent_path());
  } catch (const SchemaError &e) {
    throw SchemaError(path.string() + ":" + e.path(), e.key(), e.detail());
  }
}

void validate(const ScenarioConfig &c) {
  if (c.name.empty()) {
    throw SchemaError("$", "name", "must not be empty");
  }
  if (!(c.dt > 0.0)) {
    throw SchemaError("$", "dt", "must be > 0");
  }
  if (!(c.horizon >= c.dt)) {
    throw SchemaError("$", "horizon", "must be >= dt");
  }
  if (const auto *p = std::get_if<oil::OilParams>(&c.params)) {
    p->validate();
  } else if (std::get<std::string>(c.params).empty()) {
    throw SchemaError("$", "params", "empty path");
  }
  auto check = [&](const std::vector<oil::ScheduledEvent> &events, const std::string &where) {
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto &e = events[i];
      if (e.time > c.horizon || e.time < 0.0) {
        std::ostringstream os;
        os << where << "[" << i << "]: event time " << e.time << " outside [0, " << c.horizon
           << "]";
        throw OutOfRangeEvent(os.str());
      }
    }
    oil::validate_events(events);
  };
  check(c.events, "$.events");
  for (std::size_t i = 0; i < c.variants.size(); ++i) {
    auto all = c.events;
    all.insert(all.end(), c.variants[i].events.begin(), c.variants[i].events.end());
    check(c.variants[i].events, "$.variants[" + std::to_string(i) + "].events");
    oil::validate_events(all);
  }
}

std::string write_scenario(const ScenarioConfig &c) {
  ordered_json j;
  j["name"] = c.name;
  if (!c.description.empty()) {
    j["description"] = c.description;
  }
  j["t0"] = c.t0.to_string();
  j["horizon"] = c.horizon;
  j["dt"] = c.dt;
  if (const auto *path = std::get_if<std::string>(&c.params)) {
    j["params"] = *path;
  } else {
    j["params"] = ordered_json::parse(params_to_json(std::get<oil::OilParams>(c.params)).dump());
  }
  ordered_json supply;
  ordered_json demand;
  for (auto comp : oil::kComponents) {
    (oil::is_supply(comp) ? supply : demand)[std::string(oil::name(comp))] = c.initial.level(comp);
  }
  j["initial"] = {{"price", c.initial.price}, {"supply", supply}, {"demand", demand}};
  j["events"] = events_json(c.events);
  if (c.observed) {
    j["observed"] = *c.observed;
  }
  if (!c.variants.empty()) {
    ordered_json vs = ordered_json::array();
    for (const auto &v : c.variants) {
      vs.push_back({{"name", v.name}, {"events", events_json(v.events)}});
    }
    j["variants"] = vs;
  }
  return j.dump(2) + "\n";
}

} // namespace petrosim::scenario
