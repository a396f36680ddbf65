#include "petrosim/sd/builtins.hpp"

#include "petrosim/sd/model.hpp"

namespace petrosim::sd {

double pulse(double start, double duration, double t) {
  return (duration > 0.0 && t >= start && t < start + duration) ? 1.0 : 0.0;
}

double smooth(double input, double state, double tau, double dt) {
  if (!(tau > 0.0)) {
    throw NonPositiveTau(tau);
  }
  if (!(dt > 0.0)) {
    throw ValidationError("smoothing step dt must be positive");
  }
  return state + dt * (input - state) / tau;
}

double smoothed_derivative(double current, double prev, double dt, double deriv_state,
                           double tau) {
  if (!(dt > 0.0)) {
    throw ValidationError("derivative step dt must be positive");
  }
  return smooth((current - prev) / dt, deriv_state, tau, dt);
}

} // namespace petrosim::sd
