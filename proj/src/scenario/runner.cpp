#include "petrosim/scenario/runner.hpp"

#include "petrosim/data/time_series.hpp"
#include "petrosim/oil/model.hpp"

#include <cctype>
#include <fstream>
#include <set>

#include <json.hpp>

namespace petrosim::scenario {

namespace {

void write_file(const std::filesystem::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error("write failed for " + path.string());
  }
}

std::string file_label(const std::string &name) {
  std::string out;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    out += std::isalnum(u) || c == '-' || c == '_' ? c : '_';
  }
  return out.empty() ? "variant" : out;
}

} // namespace

std::string trajectory_header() {
  std::string h = "t";
  for (const auto &c : oil::trajectory_columns()) {
    h += "," + c;
  }
  return h;
}

std::string format_trajectory(const sd::Trajectory &trajectory) {
  const auto &columns = oil::trajectory_columns();
  std::vector<std::size_t> index;
  for (const auto &c : columns) {
    const auto i = trajectory.column_index(c);
    if (!i) {
      throw Error("trajectory lacks column '" + c + "'");
    }
    index.push_back(*i);
  }
  std::string out = trajectory_header() + "\n";
  for (std::size_t r = 0; r < trajectory.size(); ++r) {
    out += data::format_number(trajectory.times()[r]);
    for (auto i : index) {
      out += ',';
      out += data::format_number(trajectory.rows()[r][i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_price_dat(const sd::Trajectory &trajectory) {
  const auto price = trajectory.column("price");
  std::string out = "# day price_usd_per_bbl\n";
  for (std::size_t r = 0; r < trajectory.size(); ++r) {
    out += data::format_number(trajectory.times()[r]) + " " + data::format_number(price[r]) + "\n";
  }
  return out;
}

std::string format_metrics(const std::string &scenario, const std::string &observed,
                           const calibration::BacktestMetrics &m) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["observed"] = observed;
  j["points"] = m.points;
  j["mape_percent"] = m.mape;
  j["rmse"] = m.rmse;
  j["directional_accuracy"] = m.directional_accuracy;
  return j.dump(2) + "\n";
}

RunReport run_scenario(const ScenarioConfig &config, const std::filesystem::path &out_dir,
                       const RunOverrides &overrides,
                       const std::optional<std::string> &observed_override) {
  const auto params = resolve_params(config);
  const auto trajectory = simulate_scenario(config, params, overrides);

  RunReport rep;
  rep.scenario = config.name;
  rep.out_dir = out_dir;
  rep.rows = trajectory.size();
  rep.final_price = trajectory.rows().back()[*trajectory.column_index("price")];

  std::optional<calibration::BacktestMetrics> metrics;
  const auto observed = observed_override ? observed_override : config.observed;
  std::string observed_path;
  if (observed) {
    observed_path = resolve_data_path(*observed).string();
    const auto series = data::load_series(observed_path, "USD/bbl");
    metrics = calibration::backtest(trajectory, config.t0, series);
  }

  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "trajectory.csv", format_trajectory(trajectory));
  rep.files.push_back(out_dir / "trajectory.csv");
  write_file(out_dir / "price.dat", format_price_dat(trajectory));
  rep.files.push_back(out_dir / "price.dat");
  if (metrics) {
    write_file(out_dir / "metrics.json", format_metrics(config.name, observed_path, *metrics));
    rep.files.push_back(out_dir / "metrics.json");
  }
  rep.metrics = metrics;
  return rep;
}

std::vector<std::pair<std::string, sd::Trajectory>> forecast(const ScenarioConfig &config,
                                                             double horizon) {
  const auto params = resolve_params(config);
  RunOverrides base;
  base.horizon = horizon;
  base.drop_events_past_horizon = true;
  std::vector<std::pair<std::string, sd::Trajectory>> out;
  if (config.variants.empty()) {
    out.emplace_back("baseline", simulate_scenario(config, params, base));
    return out;
  }
  std::set<std::string> seen;
  for (const auto &v : config.variants) {
    if (!seen.insert(file_label(v.name)).second) {
      throw ValidationError("duplicate forecast variant name '" + v.name + "'");
    }
    auto o = base;
    o.extra_events = v.events;
    out.emplace_back(v.name, simulate_scenario(config, params, o));
  }
  return out;
}

RunReport run_forecast(const ScenarioConfig &config, const std::filesystem::path &out_dir,
                       double horizon) {
  const auto runs = forecast(config, horizon);
  RunReport rep;
  rep.scenario = config.name;
  rep.out_dir = out_dir;
  std::filesystem::create_directories(out_dir);
  for (const auto &[name, trajectory] : runs) {
    const auto path = out_dir / ("forecast_" + file_label(name) + ".csv");
    write_file(path, format_trajectory(trajectory));
    rep.files.push_back(path);
    rep.rows = trajectory.size();
    rep.final_price = trajectory.rows().back()[*trajectory.column_index("price")];
  }
  return rep;
}

} // namespace petrosim::scenario
