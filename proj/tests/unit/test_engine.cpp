#include "oracles.hpp"

#include "petrosim/sd/engine.hpp"
#include "petrosim/sd/model.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace petrosim;
using Catch::Approx;

namespace {

sd::Rule passthrough() {
  return [](const sd::EvalContext &in) { return in.inputs.empty() ? 0.0 : in[0]; };
}

sd::ModelSpec decay(double dt, double k = 1.0) {
  sd::ModelSpec spec(dt);
  spec.add_constant("k", k);
  spec.add_flow("out", {"k", "S"}, [](const sd::EvalContext &in) { return -in[0] * in[1]; });
  spec.add_stock("S", 1.0, {"out"}, passthrough());
  return spec;
}

double max_error(double dt) {
  const auto m = sd::compile(decay(dt));
  const auto traj = sd::simulate(m, m.initial_state(), 1.0, {});
  const auto s = traj.column("S");
  double e = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    e = std::max(e, std::abs(s[i] - std::exp(-traj.times()[i])));
  }
  return e;
}

} // namespace

TEST_CASE("single constant compiles", "[engine]") {
  sd::ModelSpec spec;
  spec.add_constant("c", 5);
  const auto m = sd::compile(spec);
  CHECK(m.evaluation_order() == std::vector<std::string>{"c"});
  CHECK(m.value(m.initial_state(), "c") == 5.0);
}

TEST_CASE("auxiliary two-cycle is an algebraic loop", "[engine]") {
  sd::ModelSpec spec;
  spec.add_auxiliary("a", {"b"}, passthrough());
  spec.add_auxiliary("b", {"a"}, passthrough());
  try {
    sd::compile(spec);
    FAIL("expected AlgebraicLoop");
  } catch (const sd::AlgebraicLoop &e) {
    CHECK(e.members() == std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("cycle through a stock compiles", "[engine]") {
  CHECK_NOTHROW(sd::compile(decay(1.0)));
}

TEST_CASE("compile errors", "[engine]") {
  SECTION("undefined reference") {
    sd::ModelSpec spec;
    spec.add_auxiliary("a", {"missing"}, passthrough());
    CHECK_THROWS_AS(sd::compile(spec), sd::UndefinedReference);
  }
  SECTION("duplicate name") {
    sd::ModelSpec spec;
    spec.add_constant("a", 1);
    spec.add_constant("a", 2);
    CHECK_THROWS_AS(sd::compile(spec), sd::DuplicateName);
  }
  SECTION("empty model") {
    CHECK_THROWS_AS(sd::compile(sd::ModelSpec{}), ValidationError);
  }
  SECTION("non-positive dt") {
    auto spec = decay(0.0);
    CHECK_THROWS_AS(sd::compile(spec), ValidationError);
  }
  SECTION("constant with inputs") {
    sd::ModelSpec spec;
    spec.add_constant("x", 1);
    spec.add({"c", sd::VariableKind::constant, {"x"}, {}, 1.0, ""});
    CHECK_THROWS_AS(sd::compile(spec), ValidationError);
  }
}

TEST_CASE("evaluation order respects dependencies and puts stocks last", "[engine]") {
  sd::ModelSpec spec;
  spec.add_auxiliary("c", {"b"}, passthrough());
  spec.add_stock("S", 2, {"c"}, passthrough());
  spec.add_auxiliary("b", {"a"}, passthrough());
  spec.add_auxiliary("a", {"S"}, passthrough());
  const auto order = sd::compile(spec).evaluation_order();
  auto pos = [&](const char *n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
  CHECK(pos("a") < pos("b"));
  CHECK(pos("b") < pos("c"));
  CHECK(order.back() == "S");
}

TEST_CASE("random graphs: auxiliary cycles rejected, stock cycles accepted", "[engine][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    // Random DAG over aux nodes in a random order, plus stocks reading aux
    // nodes and aux nodes reading stocks.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<std::string>> inputs(n);
    for (int i = 1; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (rng() % 3 == 0) {
          inputs[perm[i]].push_back("v" + std::to_string(perm[j]));
        }
      }
    }
    auto build = [&](bool add_back_edge) {
      sd::ModelSpec spec;
      auto in = inputs;
      in[perm[0]].push_back("S");
      in[perm[n - 1]].push_back("T");
      if (add_back_edge) {
        // perm[n-1] -> ... -> perm[0] closed by a direct edge, via a chain.
        for (int i = 1; i < n; ++i) {
          in[perm[i]].push_back("v" + std::to_string(perm[i - 1]));
        }
        in[perm[0]].push_back("v" + std::to_string(perm[n - 1]));
      }
      for (int i = 0; i < n; ++i) {
        spec.add_auxiliary("v" + std::to_string(i), in[i], [](const sd::EvalContext &c) {
          double s = 0;
          for (double x : c.inputs) s += 0.1 * x;
          return s;
        });
      }
      spec.add_stock("S", 1, {"v" + std::to_string(perm[n - 1])}, passthrough());
      spec.add_stock("T", 1, {"S"}, passthrough());
      return spec;
    };
    CHECK_NOTHROW(sd::compile(build(false)));
    CHECK_THROWS_AS(sd::compile(build(true)), sd::AlgebraicLoop);
  }
}

TEST_CASE("one Euler step", "[engine]") {
  const auto m = sd::compile(decay(0.1));
  const auto s = sd::step(m, m.initial_state(), 0.1);
  CHECK(m.value(s, "S") == Approx(0.9).epsilon(1e-15));
  CHECK(s.t == Approx(0.1));
}

TEST_CASE("zero flow conserves the stock bit-for-bit", "[engine][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (double dt : {0.013, 0.5, 1.0, 7.0}) {
    const double s0 = u(rng);
    sd::ModelSpec spec(dt);
    spec.add_flow("zero", {}, [](const sd::EvalContext &) { return 0.0; });
    spec.add_stock("S", s0, {"zero"}, passthrough());
    const auto m = sd::compile(spec);
    for (double v : sd::simulate(m, m.initial_state(), 100 * dt, {}).column("S")) {
      REQUIRE(v == s0);
    }
  }
}

TEST_CASE("exponential decay matches the closed form", "[engine]") {
  const auto m = sd::compile(decay(0.001));
  const auto traj = sd::simulate(m, m.initial_state(), 1.0, {});
  CHECK(traj.size() == 1001);
  CHECK(std::abs(traj.column("S").back() - std::exp(-1.0)) < 1e-3);
}

TEST_CASE("Euler error is first order", "[engine][property]") {
  const double e1 = max_error(0.1), e2 = max_error(0.05), e3 = max_error(0.025);
  CHECK(e2 / e1 == Approx(0.5).margin(0.1));
  CHECK(e3 / e2 == Approx(0.5).margin(0.1));
}

TEST_CASE("halving dt moves the result by O(dt) toward the RK4 reference", "[engine]") {
  const auto ref = oracle::rk4([](double, const std::vector<double> &y) { return std::vector<double>{-y[0]}; },
                               {1.0}, 0.0, 1.0, 1e-3)[0];
  auto at_one = [](double dt) {
    const auto m = sd::compile(decay(dt));
    return sd::simulate(m, m.initial_state(), 1.0, {}).column("S").back();
  };
  const double a = at_one(0.1), b = at_one(0.05);
  CHECK(std::abs(a - b) < 0.1);
  CHECK(std::abs(a - b) > 0.001);
  // Richardson extrapolation recovers second-order accuracy.
  CHECK(std::abs((2 * b - a) - ref) < std::abs(b - ref) / 5);
}

TEST_CASE("simulate grid size", "[engine]") {
  sd::ModelSpec spec;
  spec.add_constant("c", 1);
  const auto m = sd::compile(spec);
  const auto traj = sd::simulate(m, m.initial_state(), 10, {});
  CHECK(traj.size() == 11);
  CHECK(traj.times().front() == 0.0);
  CHECK(traj.times().back() == 10.0);
}

TEST_CASE("event switches decay on at t = 5", "[engine]") {
  const auto m = sd::compile(decay(1.0, 0.0));
  const auto traj = sd::simulate(m, m.initial_state(), 10, {{5.0, "k", 0.5}});
  const auto s = traj.column("S");
  for (int t = 0; t <= 5; ++t) {
    CHECK(s[t] == 1.0);
  }
  for (int t = 6; t <= 10; ++t) {
    CHECK(s[t] < s[t - 1]);
  }
}

TEST_CASE("events snap to the nearest grid point, ties earlier", "[engine]") {
  CHECK(sd::snap_to_grid(2.5, 1.0) == 2);
  CHECK(sd::snap_to_grid(2.51, 1.0) == 3);
  CHECK(sd::snap_to_grid(2.49, 1.0) == 2);
  CHECK(sd::snap_to_grid(0.0, 0.1) == 0);
  CHECK(sd::snap_to_grid(0.3, 0.1) == 3);
}

TEST_CASE("invalid events", "[engine]") {
  const auto m = sd::compile(decay(1.0));
  const auto init = m.initial_state();
  CHECK_THROWS_AS(sd::simulate(m, init, 10, {{11.0, "k", 1.0}}), sd::InvalidEvent);
  CHECK_THROWS_AS(sd::simulate(m, init, 10, {{-1.0, "k", 1.0}}), sd::InvalidEvent);
  CHECK_THROWS_AS(sd::simulate(m, init, 10, {{1.0, "S", 1.0}}), sd::InvalidEvent);
  CHECK_THROWS_AS(sd::simulate(m, init, 10, {{1.0, "nope", 1.0}}), ValidationError);
}

TEST_CASE("non-finite values abort the run", "[engine]") {
  sd::ModelSpec spec;
  spec.add_flow("blow", {"S"}, [](const sd::EvalContext &in) { return in[0] * 1e300; });
  spec.add_stock("S", 1e10, {"blow"}, passthrough());
  const auto m = sd::compile(spec);
  CHECK_THROWS_AS(sd::simulate(m, m.initial_state(), 10, {}), sd::NonFiniteValue);
  CHECK_THROWS_AS(sd::simulate(m, m.initial_state(), 10, {}), SimulationError);
}

TEST_CASE("identical runs are bit-identical", "[engine][property]") {
  const auto m = sd::compile(decay(0.37, 0.2));
  const auto a = sd::simulate(m, m.initial_state(), 50, {{10, "k", 0.5}});
  const auto b = sd::simulate(m, m.initial_state(), 50, {{10, "k", 0.5}});
  CHECK(a.rows() == b.rows());
  CHECK(a.times() == b.times());
}

TEST_CASE("trajectory times have constant spacing", "[engine]") {
  const auto m = sd::compile(decay(0.25));
  const auto traj = sd::simulate(m, m.initial_state(), 20, {});
  for (std::size_t i = 1; i < traj.size(); ++i) {
    CHECK(traj.times()[i] - traj.times()[i - 1] == Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("smooth and smoothed-derivative stocks in a model", "[engine]") {
  sd::ModelSpec spec(1.0);
  spec.add_auxiliary("ramp", {}, [](const sd::EvalContext &c) { return 3.0 * c.t; });
  spec.add_smooth("sm", "ramp", 4.0, 0.0);
  spec.add_smoothed_derivative("slope", "ramp", 2.0, 0.0);
  const auto m = sd::compile(spec);
  const auto traj = sd::simulate(m, m.initial_state(), 100, {});
  CHECK(traj.column("slope").back() == Approx(3.0).epsilon(1e-9));
  // Steady lag of a first-order smooth behind a ramp under Euler: slope * tau.
  CHECK(traj.column("ramp").back() - traj.column("sm").back() == Approx(3.0 * 4.0).epsilon(1e-6));
}
