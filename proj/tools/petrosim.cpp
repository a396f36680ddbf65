#include "petrosim/calibration/backtest.hpp"
#include "petrosim/calibration/core.hpp"
#include "petrosim/data/time_series.hpp"
#include "petrosim/scenario/config.hpp"
#include "petrosim/scenario/params_io.hpp"
#include "petrosim/scenario/runner.hpp"
#include "petrosim/scenario/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using namespace petrosim;

constexpr int kOk = 0;
constexpr int kOtherFailure = 1;
constexpr int kValidation = 2;
constexpr int kSimulation = 3;

// Runs `fn`, mapping library errors to exit codes.
template <class F> int guarded(F &&fn) {
  try {
    fn();
    return kOk;
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const SimulationError &e) {
    std::cerr << "simulation aborted: " << e.what() << '\n';
    return kSimulation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOtherFailure;
  }
}

// A path as given when it exists, else relative to the data directory.
fs::path locate(const std::string &path) {
  return fs::exists(path) ? fs::path(path) : scenario::resolve_data_path(path);
}

data::Date parse_date(const std::string &text) {
  const auto d = data::Date::parse(text);
  if (!d) {
    throw ValidationError("not a YYYY-MM-DD date: '" + text + "'");
  }
  return *d;
}

void print_metrics(const calibration::BacktestMetrics &m) {
  std::cout << "  points " << m.points << ", MAPE " << m.mape << " %, RMSE " << m.rmse
            << ", directional accuracy " << m.directional_accuracy << '\n';
}

nlohmann::ordered_json fit_json(const calibration::FitReport &f) {
  nlohmann::ordered_json j;
  j["response"] = f.response_name;
  nlohmann::ordered_json coefs = nlohmann::ordered_json::object();
  nlohmann::ordered_json errs = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    coefs[f.names[i]] = f.coefficients[i];
    errs[f.names[i]] = f.std_errors[i];
  }
  j["coefficients"] = coefs;
  j["std_errors"] = errs;
  j["r_squared"] = f.r_squared;
  j["residual_std"] = f.residual_std;
  j["condition_number"] = f.condition_number;
  j["condition_warning"] = f.condition_warning;
  j["rows_used"] = f.rows_used;
  j["rows_dropped"] = f.rows_dropped;
  return j;
}

struct SimulateArgs {
  std::vector<std::string> configs;
  std::string out;
  std::optional<double> dt;
  unsigned jobs = 1;
};

int run_simulate(const SimulateArgs &args) {
  std::atomic<std::size_t> next{0};
  std::mutex io;
  std::vector<int> codes(args.configs.size(), kOk);
  auto worker = [&] {
    for (std::size_t i = next++; i < args.configs.size(); i = next++) {
      codes[i] = guarded([&] {
        const auto config = scenario::parse_scenario(args.configs[i]);
        const fs::path dir = args.configs.size() == 1 ? fs::path(args.out)
                                                      : fs::path(args.out) / config.name;
        scenario::RunOverrides o;
        o.dt = args.dt;
        const auto rep = scenario::run_scenario(config, dir, o);
        std::lock_guard lock(io);
        std::cout << config.name << ": " << rep.rows << " rows, final price " << rep.final_price
                  << " -> " << dir.string() << '\n';
        if (rep.metrics) {
          print_metrics(*rep.metrics);
        }
      });
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(args.jobs, args.configs.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool) {
    t.join();
  }
  return *std::max_element(codes.begin(), codes.end());
}

struct CalibrateArgs {
  std::string price, supply, demand;
  std::vector<std::string> growth;
  std::vector<std::string> window;
  std::string out;
  std::string base;
  std::string report;
  bool hold_alpha_p = false;
  bool hold_elasticities = false;
  std::vector<double> depression;
  std::vector<std::string> trends;
  double min_window = 60.0;
};

void run_calibrate(const CalibrateArgs &args) {
  calibration::CalibrationConfig cfg;
  cfg.start = parse_date(args.window.at(0));
  cfg.end = parse_date(args.window.at(1));
  cfg.min_window = args.min_window;
  cfg.hold_alpha_p = args.hold_alpha_p;
  cfg.hold_elasticities = args.hold_elasticities;
  if (!args.base.empty()) {
    cfg.base = scenario::load_params(args.base);
  }
  if (!args.depression.empty()) {
    cfg.depression = calibration::DepressionWindow{args.depression.at(0), args.depression.at(1)};
  }
  const auto price = data::load_series(locate(args.price), "USD/bbl");
  const auto supply = data::load_series(locate(args.supply), "mb/d");
  const auto demand = data::load_series(locate(args.demand), "mb/d");
  std::vector<data::TimeSeries> growth;
  for (const auto &g : args.growth) {
    growth.push_back(data::load_series(locate(g), "fraction/year"));
  }
  auto result = calibration::calibrate_core(price, supply, demand, growth, cfg);

  nlohmann::ordered_json report;
  report["window"] = {result.first.to_string(), result.last.to_string()};
  report["p_ref"] = result.p_ref;
  if (result.price_fit) report["price"] = fit_json(*result.price_fit);
  if (result.supply_fit) report["supply"] = fit_json(*result.supply_fit);
  if (result.demand_fit) report["demand"] = fit_json(*result.demand_fit);
  if (result.expectation_fit) report["expectations"] = fit_json(*result.expectation_fit);

  for (const auto &spec : args.trends) {
    const auto eq = spec.find('=');
    const auto comp = oil::parse_component(spec.substr(0, eq));
    if (eq == std::string::npos || !comp) {
      throw ValidationError("--trend expects COMPONENT=FILE, got '" + spec + "'");
    }
    const auto series = data::load_series(locate(spec.substr(eq + 1)), "mb/d");
    const auto fit = calibration::calibrate_trend(series, cfg.start, cfg.end);
    result.params.trends[oil::idx(*comp)] = fit.coefficient("growth_per_year");
    report["trend_" + std::string(oil::name(*comp))] = fit_json(fit);
  }
  result.params.validate();

  scenario::save_params(args.out, result.params);
  const std::string report_path = args.report.empty() ? args.out + ".fit.json" : args.report;
  std::ofstream(report_path) << report.dump(2) << '\n';

  const auto &p = result.params;
  std::cout << "window " << result.first.to_string() << " .. " << result.last.to_string()
            << "\n  alpha_p " << p.alpha_p << ", eps_s " << p.eps_s << ", eps_d " << p.eps_d
            << ", w_dep " << p.w_dep << ", w_growth " << p.w_growth << "\n  params -> " << args.out
            << "\n  report -> " << report_path << '\n';
  for (const auto *fit : {result.price_fit ? &*result.price_fit : nullptr,
                          result.expectation_fit ? &*result.expectation_fit : nullptr}) {
    if (fit != nullptr && fit->condition_warning) {
      std::cerr << "warning: ill-conditioned fit for " << fit->response_name << " (condition "
                << fit->condition_number << ")\n";
    }
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"petrosim: stock-and-flow oil market simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto *simulate = app.add_subcommand("simulate", "run scenarios and write trajectories");
  simulate->add_option("configs", sim.configs, "scenario files")->required();
  simulate->add_option("--out", sim.out, "output directory")->required();
  simulate->add_option("--dt", sim.dt, "timestep in days");
  simulate->add_option("--jobs", sim.jobs, "parallel runs")->check(CLI::PositiveNumber);

  CalibrateArgs cal;
  auto *calibrate = app.add_subcommand("calibrate", "fit model coefficients to series");
  calibrate->add_option("--price", cal.price, "price series (USD/bbl)")->required();
  calibrate->add_option("--supply", cal.supply, "total supply series (mb/d)")->required();
  calibrate->add_option("--demand", cal.demand, "total demand series (mb/d)")->required();
  calibrate->add_option("--growth", cal.growth, "growth series (fraction/year), repeatable");
  calibrate->add_option("--window", cal.window, "START END dates")->expected(2)->required();
  calibrate->add_option("--out", cal.out, "params file to write")->required();
  calibrate->add_option("--base", cal.base, "params file holding the non-fitted values");
  calibrate->add_option("--report", cal.report, "fit report path (default <out>.fit.json)");
  calibrate->add_flag("--hold-alpha-p", cal.hold_alpha_p, "keep the base price gain");
  calibrate->add_flag("--hold-elasticities", cal.hold_elasticities,
                      "keep the base elasticities and trends");
  calibrate->add_option("--depression", cal.depression, "START DURATION in days from window start")
      ->expected(2);
  calibrate->add_option("--trend", cal.trends, "COMPONENT=FILE: fit that component's trend");
  calibrate->add_option("--min-window", cal.min_window, "shortest usable overlap in days");

  std::string bt_config, bt_observed, bt_out;
  auto *backtest = app.add_subcommand("backtest", "simulate and score against observed prices");
  backtest->add_option("config", bt_config, "scenario file")->required();
  backtest->add_option("--observed", bt_observed, "observed price series")->required();
  backtest->add_option("--out", bt_out, "output directory")->required();

  std::string fc_config, fc_out;
  double fc_horizon = 60.0;
  auto *forecast = app.add_subcommand("forecast", "60-day forecasts for each variant");
  forecast->add_option("config", fc_config, "scenario file")->required();
  forecast->add_option("--out", fc_out, "output directory")->required();
  forecast->add_option("--horizon", fc_horizon, "days")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kValidation;
  }

  if (*simulate) {
    return run_simulate(sim);
  }
  if (*calibrate) {
    return guarded([&] { run_calibrate(cal); });
  }
  if (*backtest) {
    return guarded([&] {
      const auto config = scenario::parse_scenario(bt_config);
      const auto rep = scenario::run_scenario(config, bt_out, {}, fs::absolute(locate(bt_observed)).string());
      std::cout << config.name << ": " << rep.rows << " rows -> " << bt_out << '\n';
      print_metrics(*rep.metrics);
    });
  }
  return guarded([&] {
    const auto config = scenario::parse_scenario(fc_config);
    const auto rep = scenario::run_forecast(config, fc_out, fc_horizon);
    std::cout << config.name << ": " << rep.files.size() << " forecast file(s) -> " << fc_out
              << '\n';
  });
}
