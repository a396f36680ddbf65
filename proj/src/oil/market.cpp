#include "petrosim/oil/market.hpp"

#include "petrosim/sd/builtins.hpp"
#include "petrosim/sd/model.hpp"

#include <cmath>

namespace petrosim::oil {

namespace {

double checked(double value, std::string_view label) {
  if (!std::isfinite(value) || value < 0.0) {
    throw NegativeComponent(label);
  }
  return value;
}

} // namespace

double total_expected_supply(const SupplyComponents &c) {
  return checked(c.s_opec, "s_opec") + checked(c.s_us, "s_us") + checked(c.s_other, "s_other") +
         checked(c.s_smuggled, "s_smuggled") + checked(c.s_spare, "s_spare");
}

double total_expected_demand(const DemandComponents &c) {
  return checked(c.d_eus, "d_eus") + checked(c.d_ribc, "d_ribc") + checked(c.d_other, "d_other");
}

double actual_supply(double tos, double exs) {
  if (!(exs > 0.0)) {
    throw NonPositiveExpectation(exs);
  }
  return tos / exs;
}

double actual_demand(double tod, double exd) {
  if (!(exd > 0.0)) {
    throw NonPositiveExpectation(exd);
  }
  return tod / exd;
}

double price_rate(double p, double tod, double tos, double alpha_p) {
  if (!(p > 0.0)) {
    throw NonPositivePrice(p);
  }
  if (!(tos > 0.0)) {
    throw NonPositiveSupply(tos);
  }
  return alpha_p * p * (tod / tos - 1.0);
}

double component_growth_rate(double trend, double elasticity, double price_signal,
                             double tau_response) {
  return trend / 365.0 + elasticity * price_signal / tau_response;
}

ComponentFlowStep component_flow(const ComponentFlowInput &in, double dt) {
  if (!(in.level >= 0.0)) {
    throw NegativeComponent("level");
  }
  if (!(in.price > 0.0)) {
    throw NonPositivePrice(in.price);
  }
  if (!(in.p_ref > 0.0)) {
    throw NonPositivePrice(in.p_ref);
  }
  if (!(in.tau_response > 0.0)) {
    throw sd::NonPositiveTau(in.tau_response);
  }
  ComponentFlowStep out;
  out.flow = in.level *
             component_growth_rate(in.trend, in.elasticity, in.delay_state, in.tau_response);
  out.delay_state = sd::smooth(std::log(in.price / in.p_ref), in.delay_state, in.tau, dt);
  return out;
}

} // namespace petrosim::oil
