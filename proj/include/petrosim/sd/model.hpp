#pragma once

#include "petrosim/error.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace petrosim::sd {

enum class VariableKind { stock, flow, auxiliary, constant };

std::string_view to_string(VariableKind kind);

/// Values handed to a rule: its declared inputs, in declaration order.
struct EvalContext {
  std::span<const double> inputs;
  double t = 0.0;
  double dt = 1.0;

  double operator[](std::size_t i) const { return inputs[i]; }
};

using Rule = std::function<double(const EvalContext &)>;

/// One named variable. For stocks `rule` is the net-flow rule and
/// `initial_value` the level at t = 0; for constants `rule` is unused and
/// `initial_value` is the value.
struct VariableDef {
  std::string name;
  VariableKind kind = VariableKind::auxiliary;
  std::vector<std::string> inputs;
  Rule rule;
  double initial_value = 0.0;
  std::string unit;
};

class NonPositiveTau : public ValidationError {
public:
  explicit NonPositiveTau(double tau);
};

/// Uncompiled stock/flow model. Builders append variables; nothing is
/// checked until `compile`.
class ModelSpec {
public:
  explicit ModelSpec(double dt = 1.0) : dt_(dt) {}

  void add(VariableDef def);

  void add_constant(std::string name, double value, std::string unit = {});
  void add_auxiliary(std::string name, std::vector<std::string> inputs, Rule rule,
                     std::string unit = {});
  void add_flow(std::string name, std::vector<std::string> inputs, Rule rule,
                std::string unit = {});
  void add_stock(std::string name, double initial, std::vector<std::string> inputs,
                 Rule net_flow, std::string unit = {});

  /// First-order exponential smoothing of `input` as a stock:
  /// d(name)/dt = (input - name) / tau.
  void add_smooth(std::string name, std::string input, double tau, double initial,
                  std::string unit = {});

  /// Smoothed finite-difference rate of `input`. Adds a one-step delay stock
  /// `<name>.prev` and the smoothed rate stock `name`.
  void add_smoothed_derivative(std::string name, std::string input, double tau,
                               double initial_input, std::string unit = {});

  const std::vector<VariableDef> &variables() const { return variables_; }
  double dt() const { return dt_; }
  void set_dt(double dt) { dt_ = dt; }
  bool empty() const { return variables_.empty(); }

private:
  double dt_;
  std::vector<VariableDef> variables_;
};

} // namespace petrosim::sd
