#pragma once

#include "petrosim/error.hpp"
#include "petrosim/sd/model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace petrosim::sd {

class UndefinedReference : public ValidationError {
public:
  UndefinedReference(const std::string &name, const std::string &referenced_by);
  const std::string &name() const { return name_; }

private:
  std::string name_;
};

class DuplicateName : public ValidationError {
public:
  explicit DuplicateName(const std::string &name);
  const std::string &name() const { return name_; }

private:
  std::string name_;
};

/// An auxiliary/flow cycle that does not pass through a stock.
class AlgebraicLoop : public ValidationError {
public:
  explicit AlgebraicLoop(std::vector<std::string> members);
  const std::vector<std::string> &members() const { return members_; }

private:
  std::vector<std::string> members_;
};

class InvalidEvent : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NonFiniteValue : public SimulationError {
public:
  NonFiniteValue(const std::string &name, double t);
  const std::string &name() const { return name_; }
  double time() const { return t_; }

private:
  std::string name_;
  double t_;
};

/// Values are indexed like `CompiledModel::names()`.
struct SimState {
  double t = 0.0;
  std::vector<double> values;
};

/// Immutable evaluation plan for a ModelSpec. Safe to share across threads.
class CompiledModel {
public:
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string> &names() const { return names_; }
  VariableKind kind(std::size_t i) const { return kinds_[i]; }
  const std::string &unit(std::size_t i) const { return units_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UndefinedReference when absent.
  std::size_t index(std::string_view name) const;
  double dt() const { return dt_; }

  /// Constants, then auxiliaries/flows in dependency order, then stocks.
  std::vector<std::string> evaluation_order() const;
  std::span<const std::size_t> stocks() const { return stocks_; }

  /// Stocks and constants at their initial values, auxiliaries evaluated.
  SimState initial_state(double t0 = 0.0) const;

  /// Recomputes every auxiliary and flow from the stocks and constants in
  /// `state`. Throws NonFiniteValue on NaN/Inf.
  void evaluate(SimState &state) const;

  /// Net flow of each stock, in `stocks()` order. `state` must be evaluated.
  std::vector<double> stock_derivatives(const SimState &state) const;

  double value(const SimState &state, std::string_view name) const {
    return state.values[index(name)];
  }

private:
  friend CompiledModel compile(const ModelSpec &spec);

  double eval_rule(std::size_t i, const SimState &state, std::vector<double> &scratch) const;

  double dt_ = 1.0;
  std::vector<std::string> names_;
  std::vector<VariableKind> kinds_;
  std::vector<std::string> units_;
  std::vector<double> initial_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> inputs_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::vector<std::size_t> constants_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> stocks_;
  std::size_t max_inputs_ = 0;
};

CompiledModel compile(const ModelSpec &spec);

/// One explicit Euler step: evaluate at t, advance stocks by dt, evaluate at
/// t + dt.
SimState step(const CompiledModel &model, const SimState &state, double dt);

/// Overwrites constant `target` with `value` at `time` (days). Events snap to
/// the nearest grid point, ties toward the earlier one.
struct Event {
  double time = 0.0;
  std::string target;
  double value = 0.0;
};

using EventList = std::vector<Event>;

class Trajectory {
public:
  Trajectory() = default;
  explicit Trajectory(std::vector<std::string> names) : names_(std::move(names)) {}

  const std::vector<std::string> &names() const { return names_; }
  const std::vector<double> &times() const { return times_; }
  const std::vector<std::vector<double>> &rows() const { return rows_; }
  std::size_t size() const { return times_.size(); }

  void append(const SimState &state);
  std::optional<std::size_t> column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  double at(std::size_t row, std::string_view name) const;

private:
  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<double>> rows_;
};

/// Grid index for an event time: nearest point, ties toward earlier.
std::size_t snap_to_grid(double time, double dt);

/// Runs the grid t = k * dt, k = 0..floor(horizon / dt). Events at grid k are
/// applied before the evaluation at k.
Trajectory simulate(const CompiledModel &model, const SimState &init, double horizon,
                    const EventList &events);

} // namespace petrosim::sd
