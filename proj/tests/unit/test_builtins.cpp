#include "petrosim/sd/builtins.hpp"
#include "petrosim/sd/model.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace petrosim;
using Catch::Approx;

TEST_CASE("pulse is 1 on the half-open interval", "[builtins]") {
  CHECK(sd::pulse(0, 210, 100) == 1.0);
  CHECK(sd::pulse(0, 210, 0) == 1.0);
  CHECK(sd::pulse(0, 210, 210) == 0.0);
  CHECK(sd::pulse(0, 210, -1) == 0.0);
  CHECK(sd::pulse(5, 0, 5) == 0.0);
}

TEST_CASE("pulse squared equals pulse", "[builtins][property]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50, 300);
  for (int i = 0; i < 1000; ++i) {
    const double s = u(rng), d = std::abs(u(rng)), t = u(rng);
    const double v = sd::pulse(s, d, t);
    CHECK(v * v == v);
  }
}

TEST_CASE("smooth examples", "[builtins]") {
  CHECK(sd::smooth(3, 3, 7, 1) == 3.0);
  CHECK(sd::smooth(1, 0, 10, 1) == Approx(0.1).epsilon(1e-15));
  double s = 0;
  for (int k = 0; k < 1000; ++k) {
    s = sd::smooth(1, s, 10, 0.01);
  }
  CHECK(std::abs(s - (1 - std::exp(-1.0))) < 1e-3);
}

TEST_CASE("smooth rejects non-positive tau and dt", "[builtins]") {
  CHECK_THROWS_AS(sd::smooth(1, 0, 0, 1), sd::NonPositiveTau);
  CHECK_THROWS_AS(sd::smooth(1, 0, -2, 1), sd::NonPositiveTau);
  CHECK_THROWS_AS(sd::smoothed_derivative(1, 0, 1, 0, 0), sd::NonPositiveTau);
  CHECK_THROWS_AS(sd::smooth(1, 0, 3, 0), ValidationError);
}

TEST_CASE("smooth contracts toward its input when dt <= tau", "[builtins][property]") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-100, 100);
  std::uniform_real_distribution<double> pos(0.01, 50);
  for (int i = 0; i < 2000; ++i) {
    const double input = u(rng), state = u(rng), tau = pos(rng);
    const double dt = tau * std::uniform_real_distribution<double>(0.001, 1.0)(rng);
    const double next = sd::smooth(input, state, tau, dt);
    CHECK(std::abs(next - input) <= std::abs(state - input) + 1e-12);
  }
}

TEST_CASE("smoothed derivative of a constant decays to zero", "[builtins]") {
  double rate = 0.5;
  for (int k = 0; k < 500; ++k) {
    rate = sd::smoothed_derivative(4.0, 4.0, 1.0, rate, 10.0);
  }
  CHECK(std::abs(rate) < 1e-12);
}

TEST_CASE("smoothed derivative follows a ramp", "[builtins]") {
  double rate = 0.0;
  const double dt = 0.1;
  for (int k = 1; k < 200; ++k) {
    rate = sd::smoothed_derivative(2.0 * k * dt, 2.0 * (k - 1) * dt, dt, rate, 0.1);
  }
  CHECK(rate == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("smoothed derivative of a step is a geometric spike", "[builtins]") {
  const double tau = 5, dt = 1;
  // Step from 0 to 1 at t = 0: first difference 1/dt, then zero.
  double rate = sd::smoothed_derivative(1.0, 0.0, dt, 0.0, tau);
  double expected = dt * (1.0 / dt) / tau;
  CHECK(rate == Approx(expected).epsilon(1e-15));
  for (int k = 0; k < 20; ++k) {
    rate = sd::smoothed_derivative(1.0, 1.0, dt, rate, tau);
    expected *= (1 - dt / tau);
    CHECK(rate == Approx(expected).epsilon(1e-12));
  }
}
