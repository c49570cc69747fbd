#include "growthflow/objective.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace growthflow {

namespace {

void cache_extremes(PotentialField& field) {
  field.q_min = field.q[0];
  field.q_max = field.q[0];
  for (double v : field.q) {
    if (v < field.q_min) field.q_min = v;
    if (v > field.q_max) field.q_max = v;
  }
  field.argmin_cells.clear();
  for (std::size_t i = 0; i < field.q.size(); ++i) {
    if (field.q[i] == field.q_min) {
      field.argmin_cells.push_back(i);
    }
  }
}

std::string format_point(std::span<const double> x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    os << (k ? ", " : "") << x[k];
  }
  os << ")";
  return os.str();
}

}  // namespace

PotentialField sample_field(const Objective& f, const Grid& grid) {
  if (!f) {
    throw std::invalid_argument("sample_field: empty objective");
  }
  PotentialField field;
  field.grid = grid;
  field.q.resize(grid.cells);
  for (std::size_t i = 0; i < grid.cells; ++i) {
    auto x = grid.point(i);
    double v = f(x);
    if (!std::isfinite(v)) {
      throw std::invalid_argument("sample_field: objective not finite at " + format_point(x));
    }
    field.q[i] = v;
  }
  cache_extremes(field);
  return field;
}

PotentialField table_field(std::vector<double> values, const Grid& grid) {
  if (values.size() != grid.cells) {
    throw std::invalid_argument("table_field: expected " + std::to_string(grid.cells) +
                                " values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("table_field: non-finite value at index " + std::to_string(i));
    }
  }
  PotentialField field;
  field.grid = grid;
  field.q = std::move(values);
  cache_extremes(field);
  return field;
}

PotentialField table_field(std::vector<double> values) {
  Grid grid = Grid::index_line(values.size());
  return table_field(std::move(values), grid);
}

double rastrigin(std::span<const double> x) {
  double sum = 0.0;
  for (double xi : x) {
    double d = xi - 1.0;
    sum += d * d - 10.0 * std::cos(std::numbers::pi * d);
  }
  return sum + 10.0 * static_cast<double>(x.size());
}

double step_threshold(std::span<const double> x) {
  return x[0] < 0.0 ? 0.0 : 1.0;
}

double expected_value(const DriverState& state, const PotentialField& field) {
  if (!(state.grid == field.grid)) {
    throw std::invalid_argument("expected_value: state and field grids differ");
  }
  return expected_value(state, std::span<const double>(field.q));
}

}  // namespace growthflow
