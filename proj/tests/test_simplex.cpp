#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "growthflow/grid.hpp"
#include "growthflow/reduce.hpp"
#include "growthflow/state.hpp"

using namespace growthflow;

TEST_CASE("regular grid geometry") {
  const Grid g = Grid::regular({0.0}, {1.0}, {11});
  CHECK(g.dims() == 1);
  CHECK(g.cells == 11);
  CHECK(g.spacing[0] == doctest::Approx(0.1));
  CHECK(g.cell_volume == doctest::Approx(0.1));
  CHECK(g.point(0)[0] == 0.0);
  CHECK(g.point(10)[0] == doctest::Approx(1.0));
}

TEST_CASE("flatten is row-major, last axis fastest") {
  const Grid g = Grid::regular({0.0, 0.0}, {1.0, 2.0}, {3, 5});
  CHECK(g.cells == 15);
  const std::size_t idx[] = {1, 2};
  CHECK(g.flatten(idx) == 7);
  const auto back = g.unflatten(7);
  CHECK(back[0] == 1);
  CHECK(back[1] == 2);
  const auto p = g.point(7);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(1.0));
}

TEST_CASE("index line backs value tables") {
  const Grid g = Grid::index_line(5);
  CHECK(g.cells == 5);
  CHECK(g.cell_volume == 1.0);
  CHECK(g.point(3)[0] == 3.0);
}

TEST_CASE("grid construction rejects bad boxes") {
  CHECK_THROWS_AS(Grid::regular({0.0, 0.0}, {1.0}, {3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::regular({1.0}, {0.0}, {3}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::regular({0.0}, {1.0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::index_line(1), std::invalid_argument);
}

TEST_CASE("uniform init spreads one unit of mass") {
  const DriverState s = uniform_init(Grid::regular({0.0}, {1.0}, {11}), 1.0);
  for (double h : s.h) {
    CHECK(h == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
  }
  CHECK(std::fabs(total_mass(s) - 1.0) <= 1e-14);

  const DriverState flat = uniform_init(Grid::regular({0.0, 0.0}, {1.0, 1.0}, {2, 2}), 1.0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(flat.mass(i) == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("normalize rescales raw weights onto the manifold") {
  const Grid g = Grid::regular({0.0}, {0.5}, {2});   // dV = 0.5
  const double raw[] = {3.0, 1.0};
  const DriverState s = normalize(raw, g);
  CHECK(s.h[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(s.h[1] == doctest::Approx(0.5).epsilon(1e-15));

  const double bad[] = {1.0, -0.5};
  CHECK_THROWS_AS(normalize(bad, g), std::invalid_argument);
  const double zero[] = {0.0, 0.0};
  CHECK_THROWS_AS(normalize(zero, g), std::invalid_argument);
}

TEST_CASE("random init is reproducible and strictly positive") {
  const Grid g = Grid::regular({0.0}, {1.0}, {64});
  const DriverState a = random_init(g, 1.0, 7);
  const DriverState b = random_init(g, 1.0, 7);
  const DriverState c = random_init(g, 1.0, 8);
  CHECK(a.h == b.h);
  CHECK(a.h != c.h);
  for (double h : a.h) {
    CHECK(h > 0.0);
  }
  CHECK(std::fabs(total_mass(a) - 1.0) <= 1e-14);
}

TEST_CASE("rng stream is a pure function of the seed") {
  Rng r1(42);
  Rng r2(42);
  for (int i = 0; i < 100; ++i) {
    const double u = r1.u01();
    CHECK(u == r2.u01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("entropy of a half-half split is ln 2") {
  const Grid g = Grid::index_line(4);
  const double raw[] = {0.5, 0.5, 0.0, 0.0};
  const DriverState s = normalize(raw, g);
  CHECK(entropy(s) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  const DriverState vertex = normalize(std::vector<double>{1.0, 0.0, 0.0, 0.0}, g);
  CHECK(entropy(vertex) == 0.0);
}

TEST_CASE("argmax reports ties at the lowest cell") {
  const Grid g = Grid::index_line(4);
  DriverState s = normalize(std::vector<double>{1.0, 3.0, 3.0, 1.0}, g);
  const Argmax top = argmax_mass(s);
  CHECK(top.cell == 1);
  CHECK(top.tied);

  s = normalize(std::vector<double>{1.0, 5.0, 3.0, 1.0}, g);
  const Argmax solo = argmax_mass(s);
  CHECK(solo.cell == 1);
  CHECK_FALSE(solo.tied);
  CHECK(solo.mass == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sampling follows the mass distribution") {
  const Grid g = Grid::index_line(3);
  const DriverState sure = normalize(std::vector<double>{0.0, 1.0, 0.0}, g);
  Measurement m(ReadoutMode::sample, 5);
  for (int i = 0; i < 20; ++i) {
    CHECK(sample_cell(sure, m) == 1);
  }

  const DriverState mixed = normalize(std::vector<double>{1.0, 1.0, 2.0}, g);
  std::vector<int> counts(3, 0);
  Measurement ms(ReadoutMode::sample, 11);
  for (int i = 0; i < 4000; ++i) {
    counts[sample_cell(mixed, ms)] += 1;
  }
  CHECK(counts[0] > 800);
  CHECK(counts[1] > 800);
  CHECK(counts[2] > 1700);
  CHECK(counts[0] + counts[1] + counts[2] == 4000);
}

TEST_CASE("readout returns coordinates per mode") {
  const Grid g = Grid::regular({-1.0}, {1.0}, {5});
  const DriverState s = normalize(std::vector<double>{0.0, 0.0, 0.0, 4.0, 0.0}, g);
  Measurement arg(ReadoutMode::argmax, 0);
  CHECK(readout(s, arg) == std::vector<double>{0.5});
  Measurement smp(ReadoutMode::sample, 0);
  CHECK(readout(s, smp) == std::vector<double>{0.5});
}

TEST_CASE("expected value weighs per-cell data by mass") {
  const Grid g = Grid::index_line(2);
  const DriverState s = normalize(std::vector<double>{0.5, 0.5}, g);
  const double values[] = {0.0, 1.0};
  CHECK(expected_value(s, values) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("blocked sum matches an extended-precision reference") {
  Rng rng(3);
  for (std::size_t n : {1ul, 1023ul, 1024ul, 1025ul, 3000ul, 5000ul}) {
    std::vector<double> data(n);
    long double exact = 0.0L;
    for (double& v : data) {
      v = rng.u01() - 0.3;
      exact += v;
    }
    const double got = blocked_sum(n, [&](std::size_t i) { return data[i]; });
    CHECK(std::fabs(got - static_cast<double>(exact)) <=
          1e-13 * std::max(1.0, std::fabs(static_cast<double>(exact))));
  }
}

TEST_CASE("kahan accumulator compensates cancellation") {
  KahanSum sum;
  double naive = 1.0;
  sum.add(1.0);
  for (int i = 0; i < 10; ++i) {
    sum.add(1e-16);
    naive += 1e-16;
  }
  CHECK(naive == 1.0);   // plain addition drops every term
  CHECK(sum.value() == doctest::Approx(1.0 + 1e-15).epsilon(5e-16));
  CHECK(sum.value() > 1.0);
}
