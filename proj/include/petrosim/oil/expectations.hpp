#pragma once

#include "petrosim/oil/types.hpp"

namespace petrosim::oil {

/// Smoothed driver memories feeding the supply expectation.
struct SupplyExpectationState {
  double opec = 0.0;
  double geo = 0.0;
};

/// Memories feeding the demand expectation. `growth_*_prev` hold last step's
/// growth value, `growth_*_rate` the smoothed derivative (fraction/year per day).
struct DemandExpectationState {
  double policy = 0.0;
  double growth_eus_prev = 0.0;
  double growth_ribc_prev = 0.0;
  double growth_eus_rate = 0.0;
  double growth_ribc_rate = 0.0;
};

template <class Memory> struct ExpectationStep {
  double coefficient = 1.0;
  Memory next;
};

/// ExS from the current memories: exp(w_opec * opec + w_geo * geo).
double supply_expectation(const OilParams &p, double smoothed_opec, double smoothed_geo);

/// ExD from the current memories and the (unsmoothed) depression signal:
/// exp(w_growth * 365 * (rate_eus + rate_ribc) - w_dep * dep - w_pol * policy).
double demand_expectation(const OilParams &p, double growth_rate_sum, double econ_depression,
                          double smoothed_policy);

/// Coefficient from `memory`, plus the memories advanced one step with `drivers`.
ExpectationStep<SupplyExpectationState> expectation_supply(const DriverSet &drivers,
                                                           const SupplyExpectationState &memory,
                                                           const OilParams &params, double dt);

ExpectationStep<DemandExpectationState> expectation_demand(const DriverSet &drivers,
                                                           const DemandExpectationState &memory,
                                                           const OilParams &params, double dt);

} // namespace petrosim::oil
