#include "petrosim/calibration/ols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace petrosim::calibration {

namespace {

using Matrix = std::vector<std::vector<double>>;

// Below this eigenvalue ratio the equilibrated Gram matrix is treated as singular.
constexpr double kRankTolerance = 1e-12;

// Cyclic Jacobi on a small symmetric matrix. Returns eigenvalues; `vectors`
// receives the eigenvectors as columns.
std::vector<double> symmetric_eigen(Matrix a, Matrix &vectors) {
  const std::size_t n = a.size();
  vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    vectors[i][i] = 1.0;
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        off += a[i][j] * a[i][j];
      }
    }
    if (off < 1e-40) {
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) {
          continue;
        }
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vectors[k][p];
          const double vkq = vectors[k][q];
          vectors[k][p] = c * vkp - s * vkq;
          vectors[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = a[i][i];
  }
  return values;
}

// Lower-triangular L with L·Lᵀ = a. False when a pivot is not positive.
bool cholesky(const Matrix &a, Matrix &l) {
  const std::size_t n = a.size();
  l.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) {
      d -= l[j][k] * l[j][k];
    }
    if (!(d > 0.0)) {
      return false;
    }
    l[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) {
        s -= l[i][k] * l[j][k];
      }
      l[i][j] = s / l[j][j];
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const Matrix &l, std::vector<double> b) {
  const std::size_t n = l.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      b[i] -= l[i][k] * b[k];
    }
    b[i] /= l[i][i];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) {
      b[i] -= l[k][i] * b[k];
    }
    b[i] /= l[i][i];
  }
  return b;
}

std::string join(const std::vector<std::string> &names) {
  std::string out;
  for (const auto &n : names) {
    out += (out.empty() ? "" : ", ") + n;
  }
  return out;
}

} // namespace

DesignMatrix &DesignMatrix::add_column(std::string name, std::vector<double> values) {
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
  return *this;
}

DesignMatrix &DesignMatrix::add_intercept() {
  return add_column("intercept", std::vector<double>(response.size(), 1.0));
}

double FitReport::coefficient(const std::string &name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) {
      return coefficients[i];
    }
  }
  throw std::out_of_range("no coefficient named '" + name + "'");
}

RankDeficient::RankDeficient(std::vector<std::string> columns)
    : ValidationError("design matrix is rank deficient in: " + join(columns)),
      columns_(std::move(columns)) {}

TooFewRows::TooFewRows(std::size_t rows, std::size_t cols)
    : ValidationError("regression needs at least as many rows as columns (" +
                      std::to_string(rows) + " rows, " + std::to_string(cols) + " columns)") {}

FitReport fit_ols(const DesignMatrix &x) {
  const std::size_t p = x.cols();
  const std::size_t n_all = x.rows();
  if (p == 0) {
    throw ValidationError("design matrix has no columns");
  }
  for (const auto &col : x.columns) {
    if (col.size() != n_all) {
      throw ValidationError("design matrix columns differ in length from the response");
    }
  }

  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < n_all; ++r) {
    bool ok = std::isfinite(x.response[r]);
    for (std::size_t j = 0; ok && j < p; ++j) {
      ok = std::isfinite(x.columns[j][r]);
    }
    if (ok) {
      keep.push_back(r);
    }
  }
  const std::size_t n = keep.size();
  if (n < p || n == 0) {
    throw TooFewRows(n, p);
  }

  Matrix gram(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (auto r : keep) {
        s += x.columns[i][r] * x.columns[j][r];
      }
      gram[i][j] = gram[j][i] = s;
    }
    double s = 0.0;
    for (auto r : keep) {
      s += x.columns[i][r] * x.response[r];
    }
    xty[i] = s;
  }

  std::vector<std::string> zero_columns;
  std::vector<double> scale(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (!(gram[i][i] > 0.0)) {
      zero_columns.push_back(x.names[i]);
    }
    scale[i] = gram[i][i] > 0.0 ? 1.0 / std::sqrt(gram[i][i]) : 1.0;
  }
  if (!zero_columns.empty()) {
    throw RankDeficient(zero_columns);
  }
  Matrix eq(p, std::vector<double>(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      eq[i][j] = gram[i][j] * scale[i] * scale[j];
    }
  }

  Matrix vectors;
  const auto eigen = symmetric_eigen(eq, vectors);
  const auto [min_it, max_it] = std::minmax_element(eigen.begin(), eigen.end());
  const double lmin = *min_it;
  const double lmax = *max_it;
  Matrix l;
  if (!(lmin > kRankTolerance * lmax) || !cholesky(eq, l)) {
    // Columns with weight in the near-null direction.
    const auto k = static_cast<std::size_t>(min_it - eigen.begin());
    double vmax = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      vmax = std::max(vmax, std::abs(vectors[i][k]));
    }
    std::vector<std::string> involved;
    for (std::size_t i = 0; i < p; ++i) {
      if (std::abs(vectors[i][k]) >= 0.1 * vmax) {
        involved.push_back(x.names[i]);
      }
    }
    throw RankDeficient(involved);
  }

  std::vector<double> z(p);
  for (std::size_t i = 0; i < p; ++i) {
    z[i] = xty[i] * scale[i];
  }
  const auto w = cholesky_solve(l, z);

  FitReport rep;
  rep.response_name = x.response_name;
  rep.names = x.names;
  rep.coefficients.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    rep.coefficients[i] = w[i] * scale[i];
  }
  rep.condition_number = lmax / lmin;
  rep.condition_warning = rep.condition_number > kConditionWarning;
  rep.rows_used = n;
  rep.rows_dropped = n_all - n;

  bool has_intercept = false;
  for (std::size_t j = 0; j < p && !has_intercept; ++j) {
    const double first = x.columns[j][keep.front()];
    bool constant = first != 0.0;
    for (auto r : keep) {
      constant = constant && x.columns[j][r] == first;
    }
    has_intercept = constant;
  }

  double mean = 0.0;
  for (auto r : keep) {
    mean += x.response[r];
  }
  mean /= static_cast<double>(n);
  double rss = 0.0;
  double tss = 0.0;
  rep.residuals.reserve(n);
  rep.fitted.reserve(n);
  for (auto r : keep) {
    double fit = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      fit += rep.coefficients[j] * x.columns[j][r];
    }
    const double res = x.response[r] - fit;
    rep.fitted.push_back(fit);
    rep.residuals.push_back(res);
    rss += res * res;
    const double dev = has_intercept ? x.response[r] - mean : x.response[r];
    tss += dev * dev;
  }
  if (tss > 0.0) {
    rep.r_squared = std::clamp(1.0 - rss / tss, 0.0, 1.0);
  } else {
    rep.r_squared = rss == 0.0 ? 1.0 : 0.0;
  }

  const std::size_t dof = n - p;
  rep.std_errors.assign(p, 0.0);
  if (dof > 0) {
    const double sigma2 = rss / static_cast<double>(dof);
    rep.residual_std = std::sqrt(sigma2);
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<double> e(p, 0.0);
      e[i] = 1.0;
      const auto col = cholesky_solve(l, e);
      rep.std_errors[i] = std::sqrt(sigma2 * col[i]) * scale[i];
    }
  }
  return rep;
}

} // namespace petrosim::calibration
