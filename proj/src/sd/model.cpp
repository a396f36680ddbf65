#include "petrosim/sd/model.hpp"

#include <utility>

namespace petrosim::sd {

std::string_view to_string(VariableKind kind) {
  switch (kind) {
  case VariableKind::stock:
    return "stock";
  case VariableKind::flow:
    return "flow";
  case VariableKind::auxiliary:
    return "auxiliary";
  case VariableKind::constant:
    return "constant";
  }
  return "unknown";
}

NonPositiveTau::NonPositiveTau(double tau)
    : ValidationError("smoothing time constant must be positive, got " + std::to_string(tau)) {}

void ModelSpec::add(VariableDef def) { variables_.push_back(std::move(def)); }

void ModelSpec::add_constant(std::string name, double value, std::string unit) {
  add({std::move(name), VariableKind::constant, {}, {}, value, std::move(unit)});
}

void ModelSpec::add_auxiliary(std::string name, std::vector<std::string> inputs, Rule rule,
                              std::string unit) {
  add({std::move(name), VariableKind::auxiliary, std::move(inputs), std::move(rule), 0.0,
       std::move(unit)});
}

void ModelSpec::add_flow(std::string name, std::vector<std::string> inputs, Rule rule,
                         std::string unit) {
  add({std::move(name), VariableKind::flow, std::move(inputs), std::move(rule), 0.0,
       std::move(unit)});
}

void ModelSpec::add_stock(std::string name, double initial, std::vector<std::string> inputs,
                          Rule net_flow, std::string unit) {
  add({std::move(name), VariableKind::stock, std::move(inputs), std::move(net_flow), initial,
       std::move(unit)});
}

void ModelSpec::add_smooth(std::string name, std::string input, double tau, double initial,
                           std::string unit) {
  if (!(tau > 0.0)) {
    throw NonPositiveTau(tau);
  }
  std::string self = name;
  add_stock(std::move(name), initial, {std::move(input), std::move(self)},
            [tau](const EvalContext &in) { return (in[0] - in[1]) / tau; }, std::move(unit));
}

void ModelSpec::add_smoothed_derivative(std::string name, std::string input, double tau,
                                        double initial_input, std::string unit) {
  if (!(tau > 0.0)) {
    throw NonPositiveTau(tau);
  }
  const std::string prev = name + ".prev";
  // prev + dt * (x - prev) / dt lands on x: a one-step delay.
  add_stock(prev, initial_input, {input, prev},
            [](const EvalContext &in) { return (in[0] - in[1]) / in.dt; });
  std::string self = name;
  add_stock(std::move(name), 0.0, {std::move(input), prev, std::move(self)},
            [tau](const EvalContext &in) {
              const double rate = (in[0] - in[1]) / in.dt;
              return (rate - in[2]) / tau;
            },
            std::move(unit));
}

} // namespace petrosim::sd
