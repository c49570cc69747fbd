#include "growthflow/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "growthflow/reduce.hpp"

namespace growthflow {

namespace {

void check_budget(double budget) {
  if (!std::isfinite(budget) || budget <= 0.0) {
    throw std::invalid_argument("state: budget must be positive and finite");
  }
}

}  // namespace

DriverState uniform_init(const Grid& grid, double budget) {
  check_budget(budget);
  double level = 1.0 / (static_cast<double>(grid.cells) * grid.cell_volume);
  if (!std::isfinite(level)) {
    throw std::invalid_argument("uniform_init: non-finite density level");
  }
  DriverState s;
  s.grid = grid;
  s.h.assign(grid.cells, level);
  s.budget = budget;
  return s;
}

DriverState random_init(const Grid& grid, double budget, std::uint64_t seed) {
  check_budget(budget);
  Rng rng(seed);
  std::vector<double> values(grid.cells);
  for (double& v : values) {
    v = 1.0 - rng.u01();   // strictly positive
  }
  DriverState s = normalize(values, grid);
  s.budget = budget;
  return s;
}

DriverState normalize(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.cells) {
    throw std::invalid_argument("normalize: value count does not match the grid");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw std::invalid_argument("normalize: negative or non-finite value at cell " +
                                  std::to_string(i));
    }
  }
  double sum = blocked_sum(values.size(), [&](std::size_t i) { return values[i]; });
  if (!(sum > 0.0)) {
    throw std::invalid_argument("normalize: values sum to zero");
  }
  const double denom = sum * grid.cell_volume;
  DriverState s;
  s.grid = grid;
  s.h.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.h[i] = values[i] / denom;
  }
  return s;
}

double total_mass(const DriverState& state) {
  const double dv = state.grid.cell_volume;
  return blocked_sum(state.h.size(), [&](std::size_t i) { return state.h[i] * dv; });
}

double entropy(const DriverState& state) {
  const double dv = state.grid.cell_volume;
  double s = blocked_sum(state.h.size(), [&](std::size_t i) {
    double m = state.h[i] * dv;
    return m > 0.0 ? -m * std::log(m) : 0.0;
  });
  return std::max(0.0, s);
}

Argmax argmax_mass(const DriverState& state) {
  Argmax best;
  best.cell = 0;
  double best_h = state.h.empty() ? 0.0 : state.h[0];
  for (std::size_t i = 1; i < state.h.size(); ++i) {
    if (state.h[i] > best_h) {
      best_h = state.h[i];
      best.cell = i;
      best.tied = false;
    } else if (state.h[i] == best_h) {
      best.tied = true;
    }
  }
  best.mass = best_h * state.grid.cell_volume;
  return best;
}

std::size_t sample_cell(const DriverState& state, Measurement& measurement) {
  const double u = measurement.rng.u01();
  const double dv = state.grid.cell_volume;
  double cum = 0.0;
  std::size_t last_occupied = 0;
  for (std::size_t i = 0; i < state.h.size(); ++i) {
    if (state.h[i] <= 0.0) {
      continue;
    }
    cum += state.h[i] * dv;
    last_occupied = i;
    if (u < cum) {
      return i;
    }
  }
  return last_occupied;   // u fell into rounding slack at the top
}

std::vector<double> readout(const DriverState& state, Measurement& measurement) {
  std::size_t cell = measurement.mode == ReadoutMode::sample
                         ? sample_cell(state, measurement)
                         : argmax_mass(state).cell;
  return state.grid.point(cell);
}

double expected_value(const DriverState& state, std::span<const double> per_cell) {
  if (per_cell.size() != state.h.size()) {
    throw std::invalid_argument("expected_value: size mismatch");
  }
  const double dv = state.grid.cell_volume;
  return blocked_sum(state.h.size(),
                     [&](std::size_t i) { return per_cell[i] * state.h[i] * dv; });
}

}  // namespace growthflow
