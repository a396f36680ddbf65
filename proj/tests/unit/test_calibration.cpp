#include "oracles.hpp"
#include "synthetic.hpp"

#include "petrosim/calibration/backtest.hpp"
#include "petrosim/calibration/core.hpp"
#include "petrosim/scenario/params_io.hpp"
#include "petrosim/scenario/simulation.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace petrosim;
using namespace petrosim::calibration;
using Catch::Approx;

namespace {

data::TimeSeries daily(const std::string &name, const data::Date &t0, const std::vector<double> &v) {
  data::TimeSeries s{name, "", {}};
  for (std::size_t k = 0; k < v.size(); ++k) {
    s.points.push_back({t0.plus_days(static_cast<std::int64_t>(k)), v[k]});
  }
  return s;
}

} // namespace

TEST_CASE("generate then fit recovers one draw", "[calibration]") {
  std::mt19937_64 rng(5);
  const auto draw = synthetic::random_draw(rng);
  const auto data = synthetic::generate(draw, 730, 1e-5, 6);
  const auto r = synthetic::fit(draw, data, 730);
  CHECK(synthetic::rel_err(r.params.alpha_p, draw.params.alpha_p) < 0.05);
  CHECK(synthetic::rel_err(r.params.eps_s, draw.params.eps_s) < 0.05);
  CHECK(synthetic::rel_err(r.params.eps_d, draw.params.eps_d) < 0.05);
  REQUIRE(r.price_fit);
  CHECK(r.price_fit->r_squared > 0.5);
  CHECK(r.p_ref > 0);
}

TEST_CASE("constant supply/demand ratio cannot identify the price gain", "[calibration]") {
  const data::Date t0(2010, 1, 1);
  std::vector<double> p, s, d;
  for (int k = 0; k <= 200; ++k) {
    p.push_back(80 * std::exp(0.001 * k));
    s.push_back(80 * std::exp(0.0001 * k));
    d.push_back(1.01 * s.back());
  }
  CalibrationConfig cfg;
  cfg.start = t0;
  cfg.end = t0.plus_days(200);
  CHECK_THROWS_AS(calibrate_core(daily("p", t0, p), daily("s", t0, s), daily("d", t0, d), {}, cfg),
                  RankDeficient);
}

TEST_CASE("too little common coverage", "[calibration]") {
  const data::Date t0(2010, 1, 1);
  const std::vector<double> v(40, 1.0);
  CalibrationConfig cfg;
  cfg.start = t0;
  cfg.end = t0.plus_days(365);
  CHECK_THROWS_AS(calibrate_core(daily("p", t0, v), daily("s", t0, v), daily("d", t0, v), {}, cfg),
                  InsufficientOverlap);
  cfg.start = t0.plus_days(100);
  CHECK_THROWS_AS(calibrate_core(daily("p", t0, v), daily("s", t0, v), daily("d", t0, v), {}, cfg),
                  InsufficientOverlap);
}

TEST_CASE("trend of an exact exponential", "[calibration]") {
  const data::Date t0(2012, 1, 1);
  data::TimeSeries s{"us", "mb/d", {}};
  for (int m = 0; m < 24; ++m) {
    const auto d = t0.plus_days(m * 30);
    s.points.push_back({d, 6.0 * std::exp(0.15 * data::days_between(t0, d) / 365.0)});
  }
  const auto f = calibrate_trend(s, t0, t0.plus_days(800));
  CHECK(f.coefficient("growth_per_year") == Approx(0.15).epsilon(1e-10));
  CHECK_THROWS_AS(calibrate_trend(s, t0, t0.plus_days(31)), InsufficientOverlap);
}

TEST_CASE("backtest metrics", "[calibration][backtest]") {
  SECTION("perfect forecast") {
    const std::vector<double> v = {1, 2, 3, 2, 5};
    const auto m = score(v, v);
    CHECK(m.mape == 0);
    CHECK(m.rmse == 0);
    CHECK(m.directional_accuracy == 1);
    CHECK(m.points == 5);
  }
  SECTION("flat against rising") {
    const std::vector<double> sim = {2, 2, 2}, obs = {1, 2, 3};
    const auto m = score(sim, obs);
    CHECK(m.directional_accuracy == 0);
    CHECK(m.rmse == Approx(std::sqrt(2.0 / 3.0)));
    CHECK(m.mape == Approx(100.0 * (1.0 + 0.0 + 1.0 / 3.0) / 3.0));
  }
  SECTION("matches a plain loop") {
    const std::vector<double> sim = {10, 11, 12.5, 12, 13, 15, 14, 14, 16, 17};
    const std::vector<double> obs = {10.5, 11, 12, 12.2, 12.8, 15.5, 15, 14, 15, 16.5};
    const auto m = score(sim, obs);
    const auto o = oracle::metrics_loop(sim, obs);
    CHECK(m.mape == Approx(o.mape).epsilon(1e-14));
    CHECK(m.rmse == Approx(o.rmse).epsilon(1e-14));
    CHECK(m.directional_accuracy == Approx(o.directional).epsilon(1e-14));
  }
  SECTION("shifting both series by c leaves RMSE and direction unchanged") {
    const std::vector<double> sim = {10, 11, 9, 12}, obs = {10, 12, 10, 11};
    std::vector<double> sim2, obs2;
    for (double v : sim) sim2.push_back(v + 50);
    for (double v : obs) obs2.push_back(v + 50);
    const auto a = score(sim, obs), b = score(sim2, obs2);
    CHECK(a.rmse == Approx(b.rmse));
    CHECK(a.directional_accuracy == b.directional_accuracy);
    CHECK(b.mape < a.mape);
  }
  SECTION("fewer than two points") {
    const std::vector<double> one = {1};
    CHECK_THROWS_AS(score(one, one), NoOverlap);
  }
}

TEST_CASE("backtest against a trajectory samples at observation dates", "[calibration][backtest]") {
  sd::ModelSpec spec;
  spec.add_stock("price", 10.0, {}, [](const sd::EvalContext &) { return 1.0; });
  const auto m = sd::compile(spec);
  const auto traj = sd::simulate(m, m.initial_state(), 10, {});
  const data::Date t0(2010, 1, 1);
  const data::TimeSeries obs{"p", "USD/bbl",
                             {{t0.plus_days(-5), 1}, {t0.plus_days(2), 12}, {t0.plus_days(6), 16},
                              {t0.plus_days(30), 99}}};
  const auto r = backtest(traj, t0, obs);
  CHECK(r.points == 2);
  CHECK(r.mape == 0);
  const data::TimeSeries outside{"p", "USD/bbl", {{t0.plus_days(40), 1}, {t0.plus_days(50), 2}}};
  CHECK_THROWS_AS(backtest(traj, t0, outside), NoOverlap);
}

TEST_CASE("bundled depression params reproduce their calibration", "[calibration]") {
  const auto dir = std::filesystem::path(PETROSIM_SCENARIO_DIR) / "params";
  const auto bundled = scenario::load_params(dir / "depression_2008.json");
  CalibrationConfig cfg;
  cfg.base = scenario::load_params(dir / "depression_2008_base.json");
  cfg.hold_alpha_p = true;
  cfg.hold_elasticities = true;
  cfg.depression = DepressionWindow{0, 210};
  cfg.start = data::Date(2008, 5, 30);
  cfg.end = cfg.start.plus_days(365);
  auto load = [](const char *f, const char *unit) {
    return data::load_series(scenario::resolve_data_path(f), unit);
  };
  const auto r = calibrate_core(load("wti_monthly_2008_2009.csv", "USD/bbl"),
                                load("world_supply_quarterly_2008_2009.csv", "mb/d"),
                                load("world_demand_quarterly_2008_2009.csv", "mb/d"), {}, cfg);
  CHECK(r.params.w_dep == Approx(bundled.w_dep).epsilon(1e-9));
  CHECK(r.params.w_dep > 0);
}
