#pragma once

#include <cstddef>
#include <vector>

#include "growthflow/dynamics.hpp"
#include "growthflow/objective.hpp"
#include "growthflow/state.hpp"

namespace growthflow {

// Ground truth computed by exhaustive scan, independent of the dynamics.
struct OracleReport {
  std::vector<std::size_t> argmin_cells;   // ascending
  double q_min = 0.0;
  double min_gap = 0.0;        // smallest nonzero difference between values; 0 if flat
  std::size_t predicted_cell = 0;
  bool unique = false;

  bool agrees(std::size_t cell) const;
};

OracleReport brute_force_argmin(const PotentialField& field);

// The same recursion evaluated serially in extended precision from a uniform
// start; bounds the floating-point drift of the main path. At most 64 cells.
DriverState high_precision_replay(const PotentialField& field, const DynamicsConfig& config,
                                  long steps);

}  // namespace growthflow
