#include "petrosim/calibration/backtest.hpp"

#include "petrosim/scenario/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace petrosim::calibration {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

BacktestMetrics score(std::span<const double> simulated, std::span<const double> observed) {
  if (simulated.size() != observed.size()) {
    throw ValidationError("simulated and observed samples differ in length");
  }
  const std::size_t n = observed.size();
  if (n < 2) {
    throw NoOverlap("backtest needs at least two overlapping observations");
  }
  BacktestMetrics m;
  m.points = n;
  double abs_pct = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (observed[i] == 0.0) {
      throw ValidationError("MAPE is undefined for a zero observation");
    }
    const double err = simulated[i] - observed[i];
    abs_pct += std::abs(err / observed[i]);
    sq += err * err;
  }
  m.mape = 100.0 * abs_pct / static_cast<double>(n);
  m.rmse = std::sqrt(sq / static_cast<double>(n));
  std::size_t hits = 0;
  for (std::size_t i = 1; i < n; ++i) {
    hits += sign(simulated[i] - simulated[i - 1]) == sign(observed[i] - observed[i - 1]) ? 1 : 0;
  }
  m.directional_accuracy = static_cast<double>(hits) / static_cast<double>(n - 1);
  return m;
}

BacktestMetrics backtest(const sd::Trajectory &trajectory, const data::Date &t0,
                         const data::TimeSeries &observed, std::string_view column) {
  const auto &times = trajectory.times();
  if (times.size() < 2) {
    throw NoOverlap("trajectory has fewer than two rows");
  }
  const auto values = trajectory.column(column);
  const double first = times.front();
  const double last = times.back();
  const double dt = times[1] - times[0];
  std::vector<double> sim;
  std::vector<double> obs;
  for (const auto &o : observed.points) {
    const auto day = static_cast<double>(data::days_between(t0, o.date));
    if (day < first || day > last) {
      continue;
    }
    auto k = static_cast<std::size_t>(std::floor((day - first) / dt));
    k = std::min(k, times.size() - 2);
    const double w = (day - times[k]) / dt;
    sim.push_back(values[k] + w * (values[k + 1] - values[k]));
    obs.push_back(o.value);
  }
  if (obs.size() < 2) {
    throw NoOverlap("series '" + observed.name + "' has " + std::to_string(obs.size()) +
                    " observation(s) inside the simulated horizon");
  }
  return score(sim, obs);
}

BacktestMetrics backtest(const oil::OilParams &params, const scenario::ScenarioConfig &config,
                         const data::TimeSeries &observed) {
  const auto trajectory = scenario::simulate_scenario(config, params);
  return backtest(trajectory, config.t0, observed);
}

} // namespace petrosim::calibration
