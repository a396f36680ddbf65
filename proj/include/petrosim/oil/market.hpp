#pragma once

#include "petrosim/oil/types.hpp"

namespace petrosim::oil {

/// Sum of the five supply blocks (mb/d).
double total_expected_supply(const SupplyComponents &c);

/// Sum of the three demand blocks (mb/d).
double total_expected_demand(const DemandComponents &c);

/// Expected supply with the expectation coefficient divided out.
double actual_supply(double tos, double exs);
double actual_demand(double tod, double exd);

/// dP/dt = alpha_p * p * (tod / tos - 1), USD/bbl/day.
double price_rate(double p, double tod, double tos, double alpha_p);

/// Relative growth rate of one block, 1/day:
///   trend / 365 + elasticity * price_signal / tau_response
/// where price_signal is the smoothed ln(P / p_ref).
double component_growth_rate(double trend, double elasticity, double price_signal,
                             double tau_response);

struct ComponentFlowInput {
  double level = 0.0;
  double price = 0.0;
  double p_ref = 0.0;
  double trend = 0.0;      // fraction/year
  double elasticity = 0.0; // +eps_s for supply, -eps_d for demand
  double delay_state = 0.0; // smoothed ln(P / p_ref)
  double tau = 30.0;        // perception smoothing, days
  double tau_response = 180.0;
};

struct ComponentFlowStep {
  double flow = 0.0;        // mb/d per day, from the current delay state
  double delay_state = 0.0; // advanced by one step with the current price
};

ComponentFlowStep component_flow(const ComponentFlowInput &in, double dt);

} // namespace petrosim::oil
