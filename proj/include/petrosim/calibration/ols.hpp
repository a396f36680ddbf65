#pragma once

#include "petrosim/error.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace petrosim::calibration {

/// Column-major regression problem. A column that is constant and nonzero is
/// treated as an intercept (R² is then centered).
struct DesignMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::string response_name = "y";
  std::vector<double> response;

  DesignMatrix &add_column(std::string name, std::vector<double> values);
  DesignMatrix &add_intercept();
  std::size_t rows() const { return response.size(); }
  std::size_t cols() const { return columns.size(); }
};

struct FitReport {
  std::string response_name;
  std::vector<std::string> names;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  double r_squared = 0.0;
  double residual_std = 0.0;
  /// Of the column-equilibrated Gram matrix.
  double condition_number = 1.0;
  bool condition_warning = false;
  std::vector<double> residuals;
  std::vector<double> fitted;
  std::size_t rows_used = 0;
  std::size_t rows_dropped = 0;

  /// Throws std::out_of_range for an unknown name.
  double coefficient(const std::string &name) const;
};

class RankDeficient : public ValidationError {
public:
  explicit RankDeficient(std::vector<std::string> columns);
  const std::vector<std::string> &columns() const { return columns_; }

private:
  std::vector<std::string> columns_;
};

class TooFewRows : public ValidationError {
public:
  TooFewRows(std::size_t rows, std::size_t cols);
};

inline constexpr double kConditionWarning = 1e8;

/// Least squares via the normal equations. Rows with a non-finite entry are
/// dropped and counted.
FitReport fit_ols(const DesignMatrix &x);

} // namespace petrosim::calibration
