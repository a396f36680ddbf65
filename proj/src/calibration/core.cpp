#include "petrosim/calibration/core.hpp"

#include "petrosim/data/resample.hpp"
#include "petrosim/sd/builtins.hpp"

#include <algorithm>
#include <cmath>

namespace petrosim::calibration {

namespace {

constexpr double kDay = 1.0;

std::vector<double> log_growth(const std::vector<double> &v) {
  std::vector<double> out(v.size() - 1);
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    out[k] = std::log(v[k + 1] / v[k]) / kDay;
  }
  return out;
}

void require_positive(const std::vector<double> &v, const std::string &what) {
  for (double x : v) {
    if (!(x > 0.0)) {
      throw ValidationError(what + " series must stay > 0 on the calibration window");
    }
  }
}

} // namespace

CalibrationResult calibrate_core(const data::TimeSeries &price, const data::TimeSeries &supply,
                                 const data::TimeSeries &demand,
                                 const std::vector<data::TimeSeries> &growth,
                                 const CalibrationConfig &config) {
  config.base.validate();
  if (config.end < config.start) {
    throw ValidationError("calibration window ends before it starts");
  }
  std::vector<const data::TimeSeries *> all = {&price, &supply, &demand};
  for (const auto &g : growth) {
    all.push_back(&g);
  }
  data::Date lo = config.start;
  data::Date hi = config.end;
  for (const auto *s : all) {
    if (s->empty()) {
      throw InsufficientOverlap("series '" + s->name + "' is empty");
    }
    lo = std::max(lo, s->points.front().date);
    hi = std::min(hi, s->points.back().date);
  }
  const auto span_days = data::days_between(lo, hi);
  if (span_days < 1 || static_cast<double>(span_days) < config.min_window) {
    throw InsufficientOverlap("series share " + std::to_string(std::max<std::int64_t>(span_days, 0)) +
                              " days inside the window; need " +
                              std::to_string(static_cast<long>(config.min_window)));
  }
  const double horizon = static_cast<double>(span_days);
  const auto p = data::resample(price, lo, horizon, kDay);
  const auto s = data::resample(supply, lo, horizon, kDay);
  const auto d = data::resample(demand, lo, horizon, kDay);
  require_positive(p, "price");
  require_positive(s, "supply");
  require_positive(d, "demand");
  const std::size_t rows = p.size() - 1;

  const auto &base = config.base;
  CalibrationResult out;
  out.params = base;
  out.first = lo;
  out.last = hi;
  double p_ref = 0.0;
  for (double x : p) {
    p_ref += x;
  }
  p_ref /= static_cast<double>(p.size());
  out.p_ref = p_ref;

  // Stage a: price adjustment gain.
  const auto price_growth = log_growth(p);
  std::vector<double> imbalance(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    imbalance[k] = d[k] / s[k] - 1.0;
  }
  std::vector<double> price_residual(rows);
  if (config.hold_alpha_p) {
    for (std::size_t k = 0; k < rows; ++k) {
      price_residual[k] = price_growth[k] - base.alpha_p * imbalance[k];
    }
  } else {
    DesignMatrix x;
    x.response_name = "dlnP/dt";
    x.response = price_growth;
    x.add_intercept();
    x.add_column("demand_supply_ratio_minus_1", imbalance);
    auto fit = fit_ols(x);
    const double alpha = fit.coefficient("demand_supply_ratio_minus_1");
    if (!(alpha > 0.0)) {
      throw ValidationError("fitted price gain is not positive (" + std::to_string(alpha) + ")");
    }
    out.params.alpha_p = alpha;
    price_residual = fit.residuals;
    out.price_fit = std::move(fit);
  }

  // Stage b: price elasticities and side trends.
  if (!config.hold_elasticities) {
    std::vector<double> signal(rows);
    double state = std::log(p[0] / p_ref);
    for (std::size_t k = 0; k < rows; ++k) {
      signal[k] = state;
      state = sd::smooth(std::log(p[k] / p_ref), state, base.tau_price_perception, kDay);
    }
    auto side_fit = [&](const std::vector<double> &level, const char *response) {
      DesignMatrix x;
      x.response_name = response;
      x.response = log_growth(level);
      x.add_intercept();
      x.add_column("price_signal", signal);
      return fit_ols(x);
    };
    auto sfit = side_fit(s, "dlnS/dt");
    auto dfit = side_fit(d, "dlnD/dt");
    out.params.eps_s = sfit.coefficient("price_signal") * base.tau_price_response;
    out.params.eps_d = -dfit.coefficient("price_signal") * base.tau_price_response;
    if (!(out.params.eps_s > 0.0) || !(out.params.eps_d > 0.0)) {
      throw ValidationError("fitted elasticities have the wrong sign (eps_s " +
                            std::to_string(out.params.eps_s) + ", eps_d " +
                            std::to_string(out.params.eps_d) + ")");
    }
    const double supply_trend = sfit.coefficient("intercept") * 365.0;
    const double demand_trend = dfit.coefficient("intercept") * 365.0;
    for (auto c : oil::kComponents) {
      out.params.trends[oil::idx(c)] = oil::is_supply(c) ? supply_trend : demand_trend;
    }
    out.params.p_ref = p_ref;
    out.supply_fit = std::move(sfit);
    out.demand_fit = std::move(dfit);
  }

  // Stage c: expectation weights from the unexplained price growth.
  DesignMatrix x;
  x.response_name = "price_residual";
  x.response = price_residual;
  if (config.depression) {
    std::vector<double> dep(rows);
    for (std::size_t k = 0; k < rows; ++k) {
      dep[k] = sd::pulse(config.depression->start, config.depression->duration,
                         static_cast<double>(k) * kDay);
    }
    x.add_column("econ_depression", std::move(dep));
  }
  if (!growth.empty()) {
    std::vector<double> channel(rows, 0.0);
    for (const auto &g : growth) {
      const auto v = data::resample(g, lo, horizon, kDay);
      double rate = 0.0;
      for (std::size_t k = 0; k < rows; ++k) {
        channel[k] += 365.0 * rate;
        const double prev = k == 0 ? v[0] : v[k - 1];
        rate = sd::smoothed_derivative(v[k], prev, kDay, rate, base.tau_exp_d);
      }
    }
    x.add_column("growth_channel", std::move(channel));
  }
  if (x.cols() > 0) {
    auto fit = fit_ols(x);
    const double alpha = out.params.alpha_p;
    if (config.depression) {
      out.params.w_dep = -fit.coefficient("econ_depression") / alpha;
    }
    if (!growth.empty()) {
      out.params.w_growth = fit.coefficient("growth_channel") / alpha;
    }
    out.expectation_fit = std::move(fit);
  }
  out.params.validate();
  return out;
}

FitReport calibrate_trend(const data::TimeSeries &series, const data::Date &start,
                          const data::Date &end) {
  DesignMatrix x;
  x.response_name = "ln(" + (series.name.empty() ? std::string("level") : series.name) + ")";
  std::vector<double> years;
  for (const auto &o : series.points) {
    if (o.date < start || end < o.date) {
      continue;
    }
    if (!(o.value > 0.0)) {
      throw ValidationError("trend fit needs positive values");
    }
    x.response.push_back(std::log(o.value));
    years.push_back(static_cast<double>(data::days_between(start, o.date)) / 365.0);
  }
  if (x.response.size() < 3) {
    throw InsufficientOverlap("trend fit needs at least 3 observations inside the window");
  }
  x.add_intercept();
  x.add_column("growth_per_year", std::move(years));
  return fit_ols(x);
}

} // namespace petrosim::calibration
