#pragma once

namespace petrosim::sd {

/// 1 on the half-open interval [start, start + duration), else 0.
double pulse(double start, double duration, double t);

/// One explicit step of first-order exponential smoothing.
/// Throws NonPositiveTau for tau <= 0.
double smooth(double input, double state, double tau, double dt);

/// (current - prev) / dt passed through `smooth`; returns the new smoothed rate.
double smoothed_derivative(double current, double prev, double dt, double deriv_state,
                           double tau);

} // namespace petrosim::sd
