#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "growthflow/oracle.hpp"

using namespace growthflow;

TEST_CASE("brute force scan pins the minimum and the gap") {
  const OracleReport r = brute_force_argmin(table_field({3.0, 1.0, 2.0, 5.0}));
  CHECK(r.q_min == 1.0);
  CHECK(r.argmin_cells == std::vector<std::size_t>{1});
  CHECK(r.unique);
  CHECK(r.predicted_cell == 1);
  CHECK(r.min_gap == 1.0);
  CHECK(r.agrees(1));
  CHECK_FALSE(r.agrees(0));
}

TEST_CASE("ties are listed in ascending cell order") {
  const OracleReport r = brute_force_argmin(table_field({2.0, 2.0, 5.0}));
  CHECK(r.argmin_cells == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(r.unique);
  CHECK(r.predicted_cell == 0);
  CHECK(r.min_gap == 3.0);   // zero differences are not gaps

  const OracleReport flat = brute_force_argmin(table_field({4.0, 4.0}));
  CHECK(flat.min_gap == 0.0);
  CHECK(flat.argmin_cells.size() == 2);
}

TEST_CASE("extended-precision replay reproduces one worked step") {
  const PotentialField f = table_field({0.0, 1.0});
  DynamicsConfig config;
  config.nu = 1.0;
  const DriverState replay = high_precision_replay(f, config, 1);

  // lambda = 2; factors (2.5, 1.5); z = 2; alpha = 1/11.
  const double g0 = 0.625;
  const double g1 = 0.375;
  const double alpha = 0.1 / 1.1;
  CHECK(replay.h[0] == doctest::Approx((1.0 - alpha) * 0.5 + alpha * g0).epsilon(1e-14));
  CHECK(replay.h[1] == doctest::Approx((1.0 - alpha) * 0.5 + alpha * g1).epsilon(1e-14));
  CHECK(replay.step == 1);
}

TEST_CASE("replay leaves a flat field exactly uniform") {
  const PotentialField f = table_field({2.0, 2.0, 2.0, 2.0});
  DynamicsConfig config;
  config.nu = 0.5;
  const DriverState replay = high_precision_replay(f, config, 200);
  for (double h : replay.h) {
    CHECK(h == 0.25);
  }
}

TEST_CASE("replay bounds the drift of the production path") {
  Rng rng(59);
  std::vector<double> q(16);
  for (double& v : q) {
    v = 4.0 * rng.u01();
  }
  const PotentialField f = table_field(q);
  DynamicsConfig config;
  config.nu = 0.2;
  config.max_steps = 400;
  const RunResult res = run(uniform_init(f.grid, config.nu), f, config);
  const DriverState replay = high_precision_replay(f, config, res.steps);
  REQUIRE(replay.h.size() == res.state.h.size());
  for (std::size_t i = 0; i < replay.h.size(); ++i) {
    CHECK(std::fabs(replay.h[i] - res.state.h[i]) <= 1e-9);
  }
}

TEST_CASE("replay rejects oversized fields and decaying budgets") {
  std::vector<double> big(65, 1.0);
  big[3] = 0.5;
  DynamicsConfig config;
  config.nu = 0.5;
  CHECK_THROWS_AS(high_precision_replay(table_field(big), config, 10), std::invalid_argument);

  const PotentialField f = table_field({1.0, 2.0});
  CHECK_THROWS_AS(high_precision_replay(f, config, -1), std::invalid_argument);

  DynamicsConfig decay = config;
  decay.nu_decay = 0.5;
  decay.nu_floor = 0.1;
  CHECK_THROWS_AS(high_precision_replay(f, decay, 10), std::invalid_argument);
}
