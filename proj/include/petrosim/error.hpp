#pragma once

#include <stdexcept>
#include <string>

namespace petrosim {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: malformed files, bad configs, violated preconditions.
/// The CLI maps these to exit status 2.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A run that started but could not complete. CLI exit status 3.
class SimulationError : public Error {
public:
  using Error::Error;
};

} // namespace petrosim
