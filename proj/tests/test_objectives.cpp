#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthflow/objective.hpp"

using namespace growthflow;

TEST_CASE("rastrigin landmarks") {
  const double zero1[] = {0.0};
  CHECK(rastrigin(zero1) == 21.0);   // 1 - 10 cos(-pi) + 10, exactly
  const double one1[] = {1.0};
  CHECK(rastrigin(one1) == 0.0);
  const double one3[] = {1.0, 1.0, 1.0};
  CHECK(rastrigin(one3) == 0.0);
  const double mixed[] = {0.5, 2.0};
  CHECK(rastrigin(mixed) >= 0.0);
  const double far[] = {-3.7};
  CHECK(rastrigin(far) > 10.0);
}

TEST_CASE("step threshold splits on the first coordinate") {
  const double neg[] = {-0.01, 5.0};
  CHECK(step_threshold(neg) == 0.0);
  const double zero[] = {0.0};
  CHECK(step_threshold(zero) == 1.0);
  const double pos[] = {3.0};
  CHECK(step_threshold(pos) == 1.0);
}

TEST_CASE("sampling the 1-d benchmark hits the minimum on-grid") {
  const Grid g = Grid::regular({-4.0}, {6.0}, {501});
  const PotentialField f = sample_field(rastrigin, g);
  CHECK(f.q.size() == 501);
  CHECK(f.q_min == 0.0);
  REQUIRE(f.argmin_cells.size() == 1);
  CHECK(f.argmin_cells[0] == 250);
  CHECK(g.point(250)[0] == 1.0);
  const double probe[] = {g.point(137)[0]};
  CHECK(f.q[137] == rastrigin(probe));
}

TEST_CASE("sampling the 2-d benchmark hits the minimum on-grid") {
  const Grid g = Grid::regular({-4.0, -4.0}, {6.0, 6.0}, {101, 101});
  const PotentialField f = sample_field(rastrigin, g);
  CHECK(f.q_min == 0.0);
  REQUIRE(f.argmin_cells.size() == 1);
  const std::size_t idx[] = {50, 50};
  CHECK(f.argmin_cells[0] == g.flatten(idx));
  const auto p = g.point(f.argmin_cells[0]);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 1.0);
}

TEST_CASE("table fields cache extremes and every tied minimum") {
  const PotentialField f = table_field({4.0, 2.0, 7.0, 2.0});
  CHECK(f.q_min == 2.0);
  CHECK(f.q_max == 7.0);
  CHECK(f.argmin_cells == std::vector<std::size_t>{1, 3});
  CHECK(f.grid.cells == 4);
  CHECK(f.grid.cell_volume == 1.0);
}

TEST_CASE("non-finite objective values are rejected with the coordinate") {
  const Grid g = Grid::regular({0.0}, {1.0}, {3});
  const Objective bad = [](std::span<const double> x) {
    return x[0] > 0.4 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  bool thrown = false;
  try {
    sample_field(bad, g);
  } catch (const std::invalid_argument& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("expected value checks the grid and integrates q") {
  const PotentialField f = table_field({0.0, 1.0});
  const DriverState s = normalize(std::vector<double>{0.5, 0.5}, f.grid);
  CHECK(expected_value(s, f) == doctest::Approx(0.5).epsilon(1e-15));

  DriverState other = s;
  other.grid = Grid::index_line(3);
  other.h = {0.1, 0.1, 0.1};
  CHECK_THROWS_AS(expected_value(other, f), std::invalid_argument);
}
