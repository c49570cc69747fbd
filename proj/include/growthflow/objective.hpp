#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "growthflow/grid.hpp"
#include "growthflow/state.hpp"

namespace growthflow {

// Objective q sampled on a grid, with cached extremes and argmin set.
struct PotentialField {
  Grid grid;
  std::vector<double> q;
  double q_min = 0.0;
  double q_max = 0.0;
  std::vector<std::size_t> argmin_cells;
};

using Objective = std::function<double(std::span<const double>)>;

PotentialField sample_field(const Objective& f, const Grid& grid);
PotentialField table_field(std::vector<double> values, const Grid& grid);
// Table on the 1-D unit-spacing index grid.
PotentialField table_field(std::vector<double> values);

// Multimodal benchmark: sum_k (x_k-1)^2 - 10 cos(pi (x_k-1)), shifted so the
// global minimum is 0 at x = (1, ..., 1).
double rastrigin(std::span<const double> x);
// Discontinuous benchmark: 0 where the first coordinate is below zero, else 1.
double step_threshold(std::span<const double> x);

double expected_value(const DriverState& state, const PotentialField& field);

}  // namespace growthflow
