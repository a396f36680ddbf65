#include "petrosim/data/date.hpp"
#include "petrosim/data/resample.hpp"
#include "petrosim/data/time_series.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <random>

using namespace petrosim;
using namespace petrosim::data;
using Catch::Approx;

TEST_CASE("dates parse and count days", "[data]") {
  CHECK(Date::parse("2008-05-30") == Date(2008, 5, 30));
  CHECK_FALSE(Date::parse("2008-02-30"));
  CHECK_FALSE(Date::parse("2008-5-30"));
  CHECK_FALSE(Date::parse("20080530"));
  CHECK(Date::parse("2012-02-29"));
  CHECK_FALSE(Date::parse("2013-02-29"));
  CHECK(days_between(Date(2008, 1, 1), Date(2009, 1, 1)) == 366);
  CHECK(Date(1970, 1, 1).serial() == 0);
  CHECK(Date(2011, 12, 30).plus_days(367).to_string() == "2012-12-31");
  for (std::int64_t s : {-1000, 0, 14000, 20000}) {
    CHECK(Date::from_serial(s).serial() == s);
  }
}

TEST_CASE("two-row file loads", "[data]") {
  const auto s = parse_series("date,value\n2008-05-30,127.35\n2008-06-30,133.93\n", "USD/bbl");
  REQUIRE(s.size() == 2);
  CHECK(s.points[0] == Observation{Date(2008, 5, 30), 127.35});
  CHECK(s.points[1].value == 133.93);
  CHECK(s.unit == "USD/bbl");
}

TEST_CASE("metadata comments before the header", "[data]") {
  const auto s = parse_series("# name: wti\n# unit: USD/bbl\ndate,value\n2008-05-30,1\n", "USD/bbl");
  CHECK(s.name == "wti");
  CHECK_THROWS_AS(parse_series("# unit: USD/t\ndate,value\n2008-05-30,1\n", "USD/bbl"), UnitMismatch);
}

TEST_CASE("malformed files are rejected", "[data]") {
  CHECK_THROWS_AS(parse_series("date,value\n2008-05-30,1\n2008-05-30,2\n", "x"), DuplicateDate);
  try {
    parse_series("date,value\n2008-05-30,1\n2008-06-30,NaN\n", "x");
    FAIL("no throw");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_series("date,value\n2008-05-30,1\n# late\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_series("2008-05-30,1\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_series("date,value\n2008-05-30\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_series("date,value\n2008-13-01,1\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_series("date,value\n2008-05-30,inf\n", "x"), ParseError);
  CHECK_THROWS_AS(load_series("/nonexistent/file.csv", "x"), ValidationError);
}

TEST_CASE("unsorted input is sorted", "[data]") {
  const auto s = parse_series("date,value\n2008-06-30,2\n2008-05-30,1\n", "x");
  CHECK(s.points[0].date == Date(2008, 5, 30));
}

TEST_CASE("write then load is the identity", "[data][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  TimeSeries s{"random", "mb/d", {}};
  for (int k = 0; k < 200; ++k) {
    s.points.push_back({Date(2000, 1, 1).plus_days(k * 3), u(rng)});
  }
  s.points.push_back({Date(2010, 1, 1), 0.1});
  s.points.push_back({Date(2010, 1, 2), 1e-300});
  const auto path = std::filesystem::temp_directory_path() / "petrosim_roundtrip.csv";
  write_series(path, s);
  CHECK(load_series(path, "mb/d") == s);
  std::filesystem::remove(path);
  CHECK(parse_series(format_series(s), "mb/d") == s);
}

TEST_CASE("resample", "[data]") {
  const TimeSeries s{"p", "x", {{Date(2008, 1, 1), 10}, {Date(2008, 1, 11), 20}, {Date(2008, 1, 21), 0}}};

  SECTION("grid on the observation dates is the identity") {
    const auto v = resample(s, Date(2008, 1, 1), 20, 10);
    CHECK(v == std::vector<double>{10, 20, 0});
  }
  SECTION("midpoint is the mean") {
    CHECK(interpolate_at(s, Date(2008, 1, 1), 5) == Approx(15));
    CHECK(resample(s, Date(2008, 1, 1), 20, 1)[15] == Approx(10));
  }
  SECTION("grid past the data throws with the first missing day") {
    try {
      resample(s, Date(2008, 1, 1), 25, 1);
      FAIL("no throw");
    } catch (const CoverageGap &e) {
      CHECK(e.first_missing_day() == 21);
    }
    CHECK_THROWS_AS(resample(s, Date(2007, 12, 31), 5, 1), CoverageGap);
  }
  SECTION("resampling a resampled series on the same grid changes nothing") {
    const auto once = resample(s, Date(2008, 1, 1), 20, 1);
    TimeSeries r{"r", "x", {}};
    for (std::size_t k = 0; k < once.size(); ++k) {
      r.points.push_back({Date(2008, 1, 1).plus_days(static_cast<std::int64_t>(k)), once[k]});
    }
    CHECK(resample(r, Date(2008, 1, 1), 20, 1) == once);
  }
  SECTION("interpolated values stay inside the bracketing observations") {
    const auto v = resample(s, Date(2008, 1, 1), 20, 0.5);
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double t = 0.5 * static_cast<double>(k);
      const double lo = t <= 10 ? 10 : 0, hi = 20;
      CHECK(v[k] >= lo);
      CHECK(v[k] <= hi);
    }
  }
}
