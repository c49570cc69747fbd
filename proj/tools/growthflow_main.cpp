#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#if defined(_OPENMP)
#include <omp.h>
#endif

#include "growthflow/experiment.hpp"
#include "growthflow/io.hpp"

namespace {

void apply_threads(int threads) {
  if (threads <= 0) return;
#if defined(_OPENMP)
  omp_set_num_threads(threads);
#else
  growthflow::log_info("built without OpenMP; --threads ignored");
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth-transform driver: simplex dynamics for optimization and sorting"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  int threads = 0;
  std::vector<long> snapshots;
  std::string mode;

  CLI::App* optimize = app.add_subcommand("optimize", "Run the driver and report the argmax");
  optimize->add_option("--config", config_path, "experiment config (JSON)")->required();
  optimize->add_option("--out", out_dir, "output directory")->required();
  optimize->add_option("--seed", seed, "seed override for init and sampling")
      ->check(CLI::NonNegativeNumber);
  optimize->add_option("--threads", threads, "OpenMP thread count");
  optimize->add_option("--snapshot", snapshots, "write the field at this step (repeatable)")
      ->allow_extra_args(false);

  CLI::App* sort = app.add_subcommand("sort", "Sort values through the agent network");
  sort->add_option("--config", config_path, "sort config (JSON)")->required();
  sort->add_option("--out", out_dir, "output directory")->required();
  sort->add_option("--seed", seed, "accepted for symmetry; sorting is deterministic");
  sort->add_option("--threads", threads, "OpenMP thread count");
  sort->add_option("--mode", mode, "linear or constant")
      ->check(CLI::IsMember({"linear", "constant"}));

  CLI::App* oracle = app.add_subcommand("oracle", "Print the brute-force ground truth");
  oracle->add_option("--config", config_path, "experiment config (JSON)")->required();
  oracle->add_option("--out", out_dir, "also write oracle.json here");
  oracle->add_option("--seed", seed, "accepted for symmetry; the oracle is deterministic");
  oracle->add_option("--threads", threads, "OpenMP thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  apply_threads(threads);
  try {
    if (optimize->parsed()) {
      growthflow::OptimizeOptions options;
      options.config_path = config_path;
      options.out_dir = out_dir;
      if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);
      options.snapshots = snapshots;
      return growthflow::cmd_optimize(options);
    }
    if (sort->parsed()) {
      growthflow::SortOptions options;
      options.config_path = config_path;
      options.out_dir = out_dir;
      if (!mode.empty()) options.mode = mode;
      return growthflow::cmd_sort(options);
    }
    growthflow::OracleOptions options;
    options.config_path = config_path;
    options.out_dir = out_dir;
    return growthflow::cmd_oracle(options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
