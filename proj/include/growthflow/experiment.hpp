#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthflow/dynamics.hpp"
#include "growthflow/objective.hpp"
#include "growthflow/sorting.hpp"
#include "growthflow/state.hpp"

namespace growthflow {

// A fully resolved optimize/oracle run: field plus dynamics and measurement
// choices. Built from a JSON config; unknown keys are rejected.
struct Experiment {
  PotentialField field;
  DynamicsConfig dynamics;
  bool random_init = false;
  ReadoutMode readout = ReadoutMode::argmax;
  std::uint64_t seed = 0;
};

struct SortJob {
  std::vector<double> values;
  SortConfig config;
};

Experiment load_experiment(const std::string& path);
SortJob load_sort_job(const std::string& path);

struct OptimizeOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<long> snapshots;
};

struct SortOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::string> mode;   // "linear" or "constant"
};

struct OracleOptions {
  std::string config_path;
  std::string out_dir;   // empty: stdout only
};

// Exit status: 0 the oracle confirms the argmax, 2 it does not.
// Config problems surface as exceptions (callers map them to status 1).
int cmd_optimize(const OptimizeOptions& options);

// Exit status: 0 emission order matches a reference sort, 2 it does not,
// 3 the constant-mode run failed to resolve.
int cmd_sort(const SortOptions& options);

int cmd_oracle(const OracleOptions& options);

}  // namespace growthflow
