#include "petrosim/oil/types.hpp"

#include <cmath>
#include <string>

namespace petrosim::oil {

namespace {

constexpr std::array<std::string_view, kComponentCount> kComponentNames = {
    "s_opec", "s_us", "s_other", "s_smuggled", "s_spare", "d_eus", "d_ribc", "d_other",
};

constexpr std::array<std::string_view, kDriverCount> kDriverNames = {
    "opec_decision", "geopolitical_upset", "econ_depression",
    "policy_effect", "growth_eus",         "growth_ribc",
};

void require(bool ok, const std::string &what) {
  if (!ok) {
    throw ValidationError("invalid parameters: " + what);
  }
}

} // namespace

std::string_view name(Component c) { return kComponentNames[idx(c)]; }

std::optional<Component> parse_component(std::string_view name) {
  for (Component c : kComponents) {
    if (kComponentNames[idx(c)] == name) {
      return c;
    }
  }
  return std::nullopt;
}

std::string_view name(Driver d) { return kDriverNames[idx(d)]; }

std::optional<Driver> parse_driver(std::string_view name) {
  for (Driver d : kDrivers) {
    if (kDriverNames[idx(d)] == name) {
      return d;
    }
  }
  return std::nullopt;
}

double InitialState::level(Component c) const {
  switch (c) {
  case Component::s_opec:
    return supply.s_opec;
  case Component::s_us:
    return supply.s_us;
  case Component::s_other:
    return supply.s_other;
  case Component::s_smuggled:
    return supply.s_smuggled;
  case Component::s_spare:
    return supply.s_spare;
  case Component::d_eus:
    return demand.d_eus;
  case Component::d_ribc:
    return demand.d_ribc;
  case Component::d_other:
    return demand.d_other;
  }
  return 0.0;
}

void InitialState::set_level(Component c, double value) {
  switch (c) {
  case Component::s_opec:
    supply.s_opec = value;
    break;
  case Component::s_us:
    supply.s_us = value;
    break;
  case Component::s_other:
    supply.s_other = value;
    break;
  case Component::s_smuggled:
    supply.s_smuggled = value;
    break;
  case Component::s_spare:
    supply.s_spare = value;
    break;
  case Component::d_eus:
    demand.d_eus = value;
    break;
  case Component::d_ribc:
    demand.d_ribc = value;
    break;
  case Component::d_other:
    demand.d_other = value;
    break;
  }
}

void OilParams::validate() const {
  require(std::isfinite(alpha_p) && alpha_p > 0.0, "alpha_p must be > 0");
  require(std::isfinite(eps_s) && eps_s > 0.0, "eps_s must be > 0");
  require(std::isfinite(eps_d) && eps_d > 0.0, "eps_d must be > 0");
  const std::array<std::pair<const char *, double>, 8> taus = {{
      {"tau_exp_s", tau_exp_s},
      {"tau_exp_d", tau_exp_d},
      {"tau_policy_fast", tau_policy_fast},
      {"tau_policy_slow", tau_policy_slow},
      {"tau_price_perception", tau_price_perception},
      {"tau_price_response", tau_price_response},
      {"tau_shock", tau_shock},
      {"tau_smuggle_delay", tau_smuggle_delay},
  }};
  for (const auto &[label, tau] : taus) {
    require(std::isfinite(tau) && tau > 0.0, std::string(label) + " must be > 0");
  }
  require(tau_policy_fast < tau_policy_slow, "tau_policy_fast must be < tau_policy_slow");
  for (double w : {w_growth, w_dep, w_pol, w_geo, w_opec, policy_decay, geo_opec_suppression,
                   geo_smuggled_gain, opec_spare_gain}) {
    require(std::isfinite(w), "weights and couplings must be finite");
  }
  for (Component c : kComponents) {
    require(std::isfinite(trends[idx(c)]),
            "trend for " + std::string(name(c)) + " must be finite");
  }
  if (p_ref) {
    require(std::isfinite(*p_ref) && *p_ref > 0.0, "p_ref must be > 0");
  }
}

NegativeComponent::NegativeComponent(std::string_view component)
    : DomainError("component '" + std::string(component) + "' is negative or non-finite") {}

NonPositiveExpectation::NonPositiveExpectation(double value)
    : DomainError("expectation coefficient must be > 0, got " + std::to_string(value)) {}

NonPositiveSupply::NonPositiveSupply(double value)
    : DomainError("total supply must be > 0, got " + std::to_string(value)) {}

NonPositivePrice::NonPositivePrice(double value)
    : DomainError("price must be > 0, got " + std::to_string(value)) {}

} // namespace petrosim::oil
