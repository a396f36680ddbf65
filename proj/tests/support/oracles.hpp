#pragma once

// Reference implementations used only by tests. They are written
// independently of the library code they check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// Classic fourth-order Runge-Kutta for y' = f(t, y).
inline std::vector<double> rk4(const std::function<std::vector<double>(double, const std::vector<double> &)> &f,
                               std::vector<double> y, double t0, double t1, double h) {
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / h));
  auto axpy = [](const std::vector<double> &a, double s, const std::vector<double> &b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] = a[i] + s * b[i];
    }
    return out;
  };
  double t = t0;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    t += h;
  }
  return y;
}

// Normal equations X'X b = X'y by Gaussian elimination with partial pivoting.
// `x` is row-major.
inline std::vector<double> normal_equations(const std::vector<std::vector<double>> &x,
                                            const std::vector<double> &y) {
  const std::size_t n = x.size();
  const std::size_t p = x.at(0).size();
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        a[i][j] += x[r][i] * x[r][j];
      }
      a[i][p] += x[r][i] * y[r];
    }
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
        piv = r;
      }
    }
    std::swap(a[c], a[piv]);
    if (a[c][c] == 0.0) {
      throw std::runtime_error("singular");
    }
    for (std::size_t r = c + 1; r < p; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) {
        a[r][k] -= f * a[c][k];
      }
    }
  }
  std::vector<double> b(p);
  for (std::size_t i = p; i-- > 0;) {
    double s = a[i][p];
    for (std::size_t k = i + 1; k < p; ++k) {
      s -= a[i][k] * b[k];
    }
    b[i] = s / a[i][i];
  }
  return b;
}

struct Metrics {
  double mape;
  double rmse;
  double directional;
};

// Plain per-point loop over paired samples.
inline Metrics metrics_loop(const std::vector<double> &sim, const std::vector<double> &obs) {
  double ape = 0;
  double se = 0;
  for (std::size_t i = 0; i < sim.size(); ++i) {
    ape += std::abs(sim[i] - obs[i]) / std::abs(obs[i]);
    se += (sim[i] - obs[i]) * (sim[i] - obs[i]);
  }
  int same = 0;
  for (std::size_t i = 1; i < sim.size(); ++i) {
    const double ds = sim[i] - sim[i - 1];
    const double dob = obs[i] - obs[i - 1];
    const int ss = ds > 0 ? 1 : (ds < 0 ? -1 : 0);
    const int so = dob > 0 ? 1 : (dob < 0 ? -1 : 0);
    same += ss == so;
  }
  const double n = static_cast<double>(sim.size());
  return {100.0 * ape / n, std::sqrt(se / n), same / (n - 1)};
}

} // namespace oracle
