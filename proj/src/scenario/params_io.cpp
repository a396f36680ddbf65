#include "petrosim/scenario/params_io.hpp"

#include "petrosim/scenario/config.hpp"

#include <array>
#include <fstream>
#include <utility>

namespace petrosim::scenario {

namespace {

using oil::OilParams;

constexpr std::array<std::pair<const char *, double OilParams::*>, 21> kFields = {{
    {"alpha_p", &OilParams::alpha_p},
    {"eps_s", &OilParams::eps_s},
    {"eps_d", &OilParams::eps_d},
    {"tau_exp_s", &OilParams::tau_exp_s},
    {"tau_exp_d", &OilParams::tau_exp_d},
    {"tau_policy_fast", &OilParams::tau_policy_fast},
    {"tau_policy_slow", &OilParams::tau_policy_slow},
    {"tau_price_perception", &OilParams::tau_price_perception},
    {"tau_price_response", &OilParams::tau_price_response},
    {"tau_shock", &OilParams::tau_shock},
    {"w_growth", &OilParams::w_growth},
    {"w_dep", &OilParams::w_dep},
    {"w_pol", &OilParams::w_pol},
    {"w_geo", &OilParams::w_geo},
    {"w_opec", &OilParams::w_opec},
    {"policy_decay", &OilParams::policy_decay},
    {"geo_opec_suppression", &OilParams::geo_opec_suppression},
    {"geo_smuggled_gain", &OilParams::geo_smuggled_gain},
    {"tau_smuggle_delay", &OilParams::tau_smuggle_delay},
    {"opec_spare_gain", &OilParams::opec_spare_gain},
    {"p_ref", nullptr},
}};

double number(const nlohmann::json &j, const std::string &where, const std::string &key) {
  if (!j.is_number()) {
    throw SchemaError(where, key, "expected a number");
  }
  return j.get<double>();
}

} // namespace

oil::OilParams params_from_json(const nlohmann::json &j, const std::string &where) {
  if (!j.is_object()) {
    throw SchemaError(where, "", "params must be an object");
  }
  OilParams p;
  for (const auto &[key, value] : j.items()) {
    if (key == "trends") {
      if (!value.is_object()) {
        throw SchemaError(where, key, "expected an object keyed by component");
      }
      for (const auto &[comp, trend] : value.items()) {
        const auto c = oil::parse_component(comp);
        if (!c) {
          throw SchemaError(where + ".trends", comp, "unknown component");
        }
        p.trends[oil::idx(*c)] = number(trend, where + ".trends", comp);
      }
      continue;
    }
    if (key == "p_ref") {
      if (value.is_null()) {
        p.p_ref.reset();
      } else {
        p.p_ref = number(value, where, key);
      }
      continue;
    }
    bool known = false;
    for (const auto &[name, member] : kFields) {
      if (member != nullptr && key == name) {
        p.*member = number(value, where, key);
        known = true;
        break;
      }
    }
    if (!known) {
      throw SchemaError(where, key, "unknown key");
    }
  }
  p.validate();
  return p;
}

nlohmann::json params_to_json(const oil::OilParams &params) {
  nlohmann::ordered_json out;
  for (const auto &[name, member] : kFields) {
    if (member != nullptr) {
      out[name] = params.*member;
    }
  }
  if (params.p_ref) {
    out["p_ref"] = *params.p_ref;
  } else {
    out["p_ref"] = nullptr;
  }
  nlohmann::ordered_json trends = nlohmann::ordered_json::object();
  for (auto c : oil::kComponents) {
    trends[std::string(oil::name(c))] = params.trends[oil::idx(c)];
  }
  out["trends"] = trends;
  return nlohmann::json::parse(out.dump());
}

oil::OilParams load_params(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot read params file " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw SchemaError(path.string(), "", e.what());
  }
  return params_from_json(j, path.string());
}

void save_params(const std::filesystem::path &path, const oil::OilParams &params) {
  nlohmann::ordered_json out;
  for (const auto &[name, member] : kFields) {
    if (member != nullptr) {
      out[name] = params.*member;
    }
  }
  out["p_ref"] = params.p_ref ? nlohmann::ordered_json(*params.p_ref) : nlohmann::ordered_json();
  nlohmann::ordered_json trends = nlohmann::ordered_json::object();
  for (auto c : oil::kComponents) {
    trends[std::string(oil::name(c))] = params.trends[oil::idx(c)];
  }
  out["trends"] = trends;
  std::ofstream file(path);
  if (!file) {
    throw Error("cannot write params file " + path.string());
  }
  file << out.dump(2) << '\n';
}

} // namespace petrosim::scenario
