#include "petrosim/oil/expectations.hpp"

#include "petrosim/sd/builtins.hpp"

#include <cmath>

namespace petrosim::oil {

double supply_expectation(const OilParams &p, double smoothed_opec, double smoothed_geo) {
  return std::exp(p.w_opec * smoothed_opec + p.w_geo * smoothed_geo);
}

double demand_expectation(const OilParams &p, double growth_rate_sum, double econ_depression,
                          double smoothed_policy) {
  return std::exp(p.w_growth * 365.0 * growth_rate_sum - p.w_dep * econ_depression -
                  p.w_pol * smoothed_policy);
}

ExpectationStep<SupplyExpectationState> expectation_supply(const DriverSet &drivers,
                                                           const SupplyExpectationState &memory,
                                                           const OilParams &params, double dt) {
  ExpectationStep<SupplyExpectationState> out;
  out.coefficient = supply_expectation(params, memory.opec, memory.geo);
  out.next.opec = sd::smooth(drivers.opec_decision, memory.opec, params.tau_exp_s, dt);
  out.next.geo = sd::smooth(drivers.geopolitical_upset, memory.geo, params.tau_exp_s, dt);
  return out;
}

ExpectationStep<DemandExpectationState> expectation_demand(const DriverSet &drivers,
                                                           const DemandExpectationState &memory,
                                                           const OilParams &params, double dt) {
  ExpectationStep<DemandExpectationState> out;
  out.coefficient =
      demand_expectation(params, memory.growth_eus_rate + memory.growth_ribc_rate,
                         drivers.econ_depression, memory.policy);
  out.next.policy = sd::smooth(drivers.policy_effect, memory.policy, params.tau_policy_fast, dt);
  out.next.growth_eus_rate = sd::smoothed_derivative(
      drivers.growth_eus, memory.growth_eus_prev, dt, memory.growth_eus_rate, params.tau_exp_d);
  out.next.growth_ribc_rate = sd::smoothed_derivative(
      drivers.growth_ribc, memory.growth_ribc_prev, dt, memory.growth_ribc_rate, params.tau_exp_d);
  out.next.growth_eus_prev = drivers.growth_eus;
  out.next.growth_ribc_prev = drivers.growth_ribc;
  return out;
}

} // namespace petrosim::oil
