#include "growthflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growthflow {

bool OracleReport::agrees(std::size_t cell) const {
  return std::binary_search(argmin_cells.begin(), argmin_cells.end(), cell);
}

OracleReport brute_force_argmin(const PotentialField& field) {
  OracleReport report;
  double best = field.q[0];
  for (std::size_t i = 1; i < field.q.size(); ++i) {
    if (field.q[i] < best) {
      best = field.q[i];
    }
  }
  report.q_min = best;
  for (std::size_t i = 0; i < field.q.size(); ++i) {
    if (field.q[i] == best) {
      report.argmin_cells.push_back(i);
    }
  }
  report.predicted_cell = report.argmin_cells.front();
  report.unique = report.argmin_cells.size() == 1;

  std::vector<double> sorted(field.q.begin(), field.q.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    double d = sorted[i] - sorted[i - 1];
    if (d > 0.0 && (gap == 0.0 || d < gap)) {
      gap = d;
    }
  }
  report.min_gap = gap;
  return report;
}

DriverState high_precision_replay(const PotentialField& field, const DynamicsConfig& config,
                                  long steps) {
  config.validate();
  if (field.grid.cells > 64) {
    throw std::invalid_argument("high_precision_replay: supports at most 64 cells");
  }
  if (steps < 0) {
    throw std::invalid_argument("high_precision_replay: steps must be nonnegative");
  }
  if (config.nu_decay < 1.0) {
    throw std::invalid_argument("high_precision_replay: assumes a fixed budget");
  }
  const std::size_t n = field.grid.cells;
  const long double dv = static_cast<long double>(field.grid.cell_volume);
  const long double nu = static_cast<long double>(config.nu);
  const long double sigma = static_cast<long double>(config.l.sigma);
  const long double alpha = static_cast<long double>(config.dt) /
                            (static_cast<long double>(config.tau) +
                             static_cast<long double>(config.dt));
  const bool rising = config.l.rises_with_mass();

  long double lambda;
  if (config.lambda_policy == LambdaPolicy::fixed) {
    lambda = static_cast<long double>(config.lambda_fixed);
  } else {
    long double adverse = -sigma * static_cast<long double>(field.q[0]);
    for (std::size_t i = 1; i < n; ++i) {
      adverse = std::max(adverse, -sigma * static_cast<long double>(field.q[i]));
    }
    long double worst = adverse / nu;
    if (!rising) {
      worst += 1.0L / dv;
    }
    lambda = static_cast<long double>(config.lambda_margin) + std::max(0.0L, worst);
  }

  std::vector<long double> h(n, 1.0L / (static_cast<long double>(n) * dv));
  std::vector<long double> k(n);
  for (long t = 0; t < steps; ++t) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const long double q = static_cast<long double>(field.q[i]);
      const long double l_val = rising ? nu * h[i] + sigma * q : sigma * q - nu * h[i];
      k[i] = h[i] * (l_val / nu + lambda);
      sum += k[i];
    }
    const long double z = sum * dv;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = (1.0L - alpha) * h[i] + alpha * (k[i] / z);
    }
  }

  DriverState out;
  out.grid = field.grid;
  out.budget = config.nu;
  out.step = steps;
  out.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.h[i] = static_cast<double>(h[i]);
  }
  return out;
}

}  // namespace growthflow
