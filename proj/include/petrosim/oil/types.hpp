#pragma once

#include "petrosim/error.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace petrosim::oil {

/// Supply and demand blocks, each held as a stock in mb/d.
enum class Component : std::size_t {
  s_opec,
  s_us,
  s_other,
  s_smuggled,
  s_spare,
  d_eus,
  d_ribc,
  d_other,
};

inline constexpr std::size_t kComponentCount = 8;
inline constexpr std::size_t kSupplyCount = 5;

inline constexpr std::array<Component, kComponentCount> kComponents = {
    Component::s_opec,     Component::s_us,    Component::s_other,
    Component::s_smuggled, Component::s_spare, Component::d_eus,
    Component::d_ribc,     Component::d_other,
};

std::string_view name(Component c);
std::optional<Component> parse_component(std::string_view name);
inline bool is_supply(Component c) { return static_cast<std::size_t>(c) < kSupplyCount; }

enum class Driver : std::size_t {
  opec_decision,
  geopolitical_upset,
  econ_depression,
  policy_effect,
  growth_eus,
  growth_ribc,
};

inline constexpr std::size_t kDriverCount = 6;

inline constexpr std::array<Driver, kDriverCount> kDrivers = {
    Driver::opec_decision, Driver::geopolitical_upset, Driver::econ_depression,
    Driver::policy_effect, Driver::growth_eus,         Driver::growth_ribc,
};

std::string_view name(Driver d);
std::optional<Driver> parse_driver(std::string_view name);

template <class T> using PerComponent = std::array<T, kComponentCount>;

inline std::size_t idx(Component c) { return static_cast<std::size_t>(c); }
inline std::size_t idx(Driver d) { return static_cast<std::size_t>(d); }

struct SupplyComponents {
  double s_opec = 0.0;
  double s_us = 0.0;
  double s_other = 0.0;
  double s_smuggled = 0.0;
  double s_spare = 0.0;

  bool operator==(const SupplyComponents &) const = default;
};

struct DemandComponents {
  double d_eus = 0.0;
  double d_ribc = 0.0;
  double d_other = 0.0;

  bool operator==(const DemandComponents &) const = default;
};

struct DriverSet {
  double opec_decision = 0.0;
  double geopolitical_upset = 0.0;
  double econ_depression = 0.0;
  double policy_effect = 0.0;
  double growth_eus = 0.0;
  double growth_ribc = 0.0;
};

/// Market state at t = 0.
struct InitialState {
  double price = 0.0; // USD/bbl
  SupplyComponents supply;
  DemandComponents demand;

  double level(Component c) const;
  void set_level(Component c, double value);
  bool operator==(const InitialState &) const = default;
};

/// Free coefficients of the market model. Rates are per day unless the name
/// says otherwise; time constants are in days.
struct OilParams {
  double alpha_p = 0.08; // price adjustment gain, 1/day
  double eps_s = 0.02;   // supply price elasticity
  double eps_d = 0.02;   // demand price elasticity

  double tau_exp_s = 30.0;
  double tau_exp_d = 30.0;
  double tau_policy_fast = 30.0;
  double tau_policy_slow = 365.0;
  double tau_price_perception = 30.0; // smoothing of ln(P / p_ref)
  double tau_price_response = 180.0;  // scales the price term in component growth
  double tau_shock = 20.0;            // phase-in of scheduled component shocks

  // Expectation weights.
  double w_growth = 0.0;
  double w_dep = 0.0;
  double w_pol = 0.0;
  double w_geo = 0.0;
  double w_opec = 0.0;

  // Slow policy channel on EU/US demand, fraction/year per unit policy_effect.
  double policy_decay = 0.02;

  // Smuggled/spare coupling, fraction/year per unit of the smoothed driver.
  double geo_opec_suppression = 0.05;
  double geo_smuggled_gain = 0.5;
  double tau_smuggle_delay = 90.0;
  double opec_spare_gain = 0.5;

  /// Autonomous growth per component, fraction/year.
  PerComponent<double> trends{};

  /// Reference price for the price-response term; the initial price when unset.
  std::optional<double> p_ref;

  /// Throws ValidationError on a violated invariant.
  void validate() const;
  bool operator==(const OilParams &) const = default;
};

/// Non-physical inputs to the market functions (negative levels, zero
/// supply, ...). Raised inside a run, these abort it.
class DomainError : public SimulationError {
public:
  using SimulationError::SimulationError;
};

class NegativeComponent : public DomainError {
public:
  explicit NegativeComponent(std::string_view component);
};

class NonPositiveExpectation : public DomainError {
public:
  explicit NonPositiveExpectation(double value);
};

class NonPositiveSupply : public DomainError {
public:
  explicit NonPositiveSupply(double value);
};

class NonPositivePrice : public DomainError {
public:
  explicit NonPositivePrice(double value);
};

} // namespace petrosim::oil
