#include "petrosim/sd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <sstream>

namespace petrosim::sd {

namespace {

std::string join(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &item : items) {
    if (!out.empty()) {
      out += ", ";
    }
    out += item;
  }
  return out;
}

bool is_instantaneous(VariableKind kind) {
  return kind == VariableKind::auxiliary || kind == VariableKind::flow;
}

// Members of every strongly connected component with a cycle, restricted to
// the nodes in `pending`.
std::vector<std::size_t> cycle_members(const std::vector<std::vector<std::size_t>> &edges,
                                       const std::vector<bool> &pending) {
  const std::size_t n = edges.size();
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> members;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (!pending[w]) {
        continue;
      }
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      const bool self_loop =
          std::find(edges[v].begin(), edges[v].end(), v) != edges[v].end();
      if (component.size() > 1 || self_loop) {
        members.insert(members.end(), component.begin(), component.end());
      }
    }
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (pending[v] && index[v] < 0) {
      visit(v);
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

} // namespace

UndefinedReference::UndefinedReference(const std::string &name, const std::string &referenced_by)
    : ValidationError(referenced_by.empty()
                          ? "undefined variable '" + name + "'"
                          : "undefined variable '" + name + "' referenced by '" +
                                referenced_by + "'"),
      name_(name) {}

DuplicateName::DuplicateName(const std::string &name)
    : ValidationError("duplicate variable name '" + name + "'"), name_(name) {}

AlgebraicLoop::AlgebraicLoop(std::vector<std::string> members)
    : ValidationError("algebraic loop without a stock: {" + join(members) + "}"),
      members_(std::move(members)) {}

NonFiniteValue::NonFiniteValue(const std::string &name, double t)
    : SimulationError([&] {
        std::ostringstream os;
        os << "non-finite value in '" << name << "' at t=" << t;
        return os.str();
      }()),
      name_(name), t_(t) {}

std::optional<std::size_t> CompiledModel::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t CompiledModel::index(std::string_view name) const {
  if (auto i = find(name)) {
    return *i;
  }
  throw UndefinedReference(std::string(name), {});
}

std::vector<std::string> CompiledModel::evaluation_order() const {
  std::vector<std::string> out;
  out.reserve(names_.size());
  for (std::size_t i : constants_) {
    out.push_back(names_[i]);
  }
  for (std::size_t i : order_) {
    out.push_back(names_[i]);
  }
  for (std::size_t i : stocks_) {
    out.push_back(names_[i]);
  }
  return out;
}

SimState CompiledModel::initial_state(double t0) const {
  SimState state;
  state.t = t0;
  state.values = initial_;
  evaluate(state);
  return state;
}

double CompiledModel::eval_rule(std::size_t i, const SimState &state,
                                std::vector<double> &scratch) const {
  const auto &in = inputs_[i];
  for (std::size_t k = 0; k < in.size(); ++k) {
    scratch[k] = state.values[in[k]];
  }
  EvalContext ctx{std::span<const double>(scratch.data(), in.size()), state.t, dt_};
  return rules_[i](ctx);
}

void CompiledModel::evaluate(SimState &state) const {
  std::vector<double> scratch(max_inputs_);
  for (std::size_t i : order_) {
    const double v = eval_rule(i, state, scratch);
    if (!std::isfinite(v)) {
      throw NonFiniteValue(names_[i], state.t);
    }
    state.values[i] = v;
  }
  for (std::size_t i : stocks_) {
    if (!std::isfinite(state.values[i])) {
      throw NonFiniteValue(names_[i], state.t);
    }
  }
}

std::vector<double> CompiledModel::stock_derivatives(const SimState &state) const {
  std::vector<double> scratch(max_inputs_);
  std::vector<double> out;
  out.reserve(stocks_.size());
  for (std::size_t i : stocks_) {
    const double v = eval_rule(i, state, scratch);
    if (!std::isfinite(v)) {
      throw NonFiniteValue(names_[i], state.t);
    }
    out.push_back(v);
  }
  return out;
}

CompiledModel compile(const ModelSpec &spec) {
  if (spec.empty()) {
    throw ValidationError("model has no variables");
  }
  if (!(spec.dt() > 0.0) || !std::isfinite(spec.dt())) {
    throw ValidationError("model dt must be positive");
  }

  CompiledModel model;
  model.dt_ = spec.dt();
  const auto &vars = spec.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto &v = vars[i];
    if (v.name.empty()) {
      throw ValidationError("variable with empty name");
    }
    if (!model.lookup_.emplace(v.name, i).second) {
      throw DuplicateName(v.name);
    }
    model.names_.push_back(v.name);
    model.kinds_.push_back(v.kind);
    model.units_.push_back(v.unit);
    model.initial_.push_back(v.kind == VariableKind::stock || v.kind == VariableKind::constant
                                 ? v.initial_value
                                 : 0.0);
    model.rules_.push_back(v.rule);
  }

  const std::size_t n = vars.size();
  model.inputs_.resize(n);
  std::vector<std::vector<std::size_t>> edges(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &v = vars[i];
    if (v.kind == VariableKind::constant) {
      if (!v.inputs.empty()) {
        throw ValidationError("constant '" + v.name + "' must not have inputs");
      }
      model.constants_.push_back(i);
      continue;
    }
    if (!v.rule) {
      throw ValidationError("variable '" + v.name + "' has no rule");
    }
    for (const auto &ref : v.inputs) {
      auto it = model.lookup_.find(ref);
      if (it == model.lookup_.end()) {
        throw UndefinedReference(ref, v.name);
      }
      const std::size_t j = it->second;
      model.inputs_[i].push_back(j);
      if (is_instantaneous(v.kind) && is_instantaneous(vars[j].kind)) {
        edges[j].push_back(i);
        ++indegree[i];
      }
    }
    model.max_inputs_ = std::max(model.max_inputs_, v.inputs.size());
    if (v.kind == VariableKind::stock) {
      model.stocks_.push_back(i);
    }
  }

  // Kahn's algorithm; ties resolved by declaration order for a stable plan.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  std::size_t instantaneous = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_instantaneous(vars[i].kind)) {
      ++instantaneous;
      if (indegree[i] == 0) {
        ready.push(i);
      }
    }
  }
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    model.order_.push_back(u);
    for (std::size_t w : edges[u]) {
      if (--indegree[w] == 0) {
        ready.push(w);
      }
    }
  }
  if (model.order_.size() != instantaneous) {
    std::vector<bool> pending(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      pending[i] = is_instantaneous(vars[i].kind) && indegree[i] > 0;
    }
    std::vector<std::string> members;
    for (std::size_t i : cycle_members(edges, pending)) {
      members.push_back(vars[i].name);
    }
    throw AlgebraicLoop(std::move(members));
  }
  return model;
}

SimState step(const CompiledModel &model, const SimState &state, double dt) {
  if (!(dt > 0.0)) {
    throw ValidationError("step dt must be positive");
  }
  if (state.values.size() != model.size()) {
    throw ValidationError("state does not match the model's variable set");
  }
  SimState current = state;
  model.evaluate(current);
  const auto derivs = model.stock_derivatives(current);
  SimState next = std::move(current);
  const auto stocks = model.stocks();
  for (std::size_t k = 0; k < stocks.size(); ++k) {
    next.values[stocks[k]] += dt * derivs[k];
  }
  next.t = state.t + dt;
  model.evaluate(next);
  return next;
}

void Trajectory::append(const SimState &state) {
  times_.push_back(state.t);
  rows_.push_back(state.values);
}

std::optional<std::size_t> Trajectory::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<double> Trajectory::column(std::string_view name) const {
  const auto c = column_index(name);
  if (!c) {
    throw UndefinedReference(std::string(name), {});
  }
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto &row : rows_) {
    out.push_back(row[*c]);
  }
  return out;
}

double Trajectory::at(std::size_t row, std::string_view name) const {
  const auto c = column_index(name);
  if (!c) {
    throw UndefinedReference(std::string(name), {});
  }
  return rows_.at(row)[*c];
}

std::size_t snap_to_grid(double time, double dt) {
  const double k = std::ceil(time / dt - 0.5);
  return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

Trajectory simulate(const CompiledModel &model, const SimState &init, double horizon,
                    const EventList &events) {
  const double dt = model.dt();
  if (!(horizon >= dt)) {
    throw ValidationError("horizon must be at least one timestep");
  }
  if (init.values.size() != model.size()) {
    throw ValidationError("initial state does not match the model's variable set");
  }
  const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));

  struct Scheduled {
    std::size_t k;
    std::size_t target;
    double value;
  };
  std::vector<Scheduled> schedule;
  for (const auto &e : events) {
    if (!std::isfinite(e.time) || e.time < 0.0 || e.time > horizon) {
      throw InvalidEvent("event on '" + e.target + "' at t=" + std::to_string(e.time) +
                         " lies outside [0, horizon]");
    }
    const auto target = model.find(e.target);
    if (!target) {
      throw InvalidEvent("event targets unknown variable '" + e.target + "'");
    }
    if (model.kind(*target) != VariableKind::constant) {
      throw InvalidEvent("event target '" + e.target + "' is not a constant");
    }
    if (!std::isfinite(e.value)) {
      throw InvalidEvent("event on '" + e.target + "' has a non-finite value");
    }
    schedule.push_back({std::min(snap_to_grid(e.time, dt), steps), *target, e.value});
  }
  // Same-step events apply in list order.
  std::stable_sort(schedule.begin(), schedule.end(),
                   [](const Scheduled &a, const Scheduled &b) { return a.k < b.k; });

  Trajectory out(model.names());
  SimState state = init;
  auto next_event = schedule.begin();
  const auto stocks = model.stocks();
  for (std::size_t k = 0; k <= steps; ++k) {
    state.t = init.t + static_cast<double>(k) * dt;
    for (; next_event != schedule.end() && next_event->k == k; ++next_event) {
      state.values[next_event->target] = next_event->value;
    }
    model.evaluate(state);
    out.append(state);
    if (k == steps) {
      break;
    }
    const auto derivs = model.stock_derivatives(state);
    for (std::size_t s = 0; s < stocks.size(); ++s) {
      state.values[stocks[s]] += dt * derivs[s];
    }
  }
  return out;
}

} // namespace petrosim::sd
