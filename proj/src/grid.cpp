#include "growthflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace growthflow {

Grid Grid::regular(std::vector<double> lower, std::vector<double> upper,
                   std::vector<std::size_t> points) {
  if (lower.empty() || lower.size() != upper.size() || lower.size() != points.size()) {
    throw std::invalid_argument("grid: lower/upper/points must be nonempty and equally sized");
  }
  Grid g;
  g.lower = std::move(lower);
  g.upper = std::move(upper);
  g.points = std::move(points);
  g.spacing.resize(g.lower.size());
  g.cells = 1;
  g.cell_volume = 1.0;
  for (std::size_t k = 0; k < g.lower.size(); ++k) {
    if (!std::isfinite(g.lower[k]) || !std::isfinite(g.upper[k])) {
      throw std::invalid_argument("grid: non-finite bounds on axis " + std::to_string(k));
    }
    if (!(g.lower[k] < g.upper[k])) {
      throw std::invalid_argument("grid: lower must be below upper on axis " + std::to_string(k));
    }
    if (g.points[k] < 2) {
      throw std::invalid_argument("grid: need at least 2 points on axis " + std::to_string(k));
    }
    g.spacing[k] = (g.upper[k] - g.lower[k]) / static_cast<double>(g.points[k] - 1);
    g.cell_volume *= g.spacing[k];
    g.cells *= g.points[k];
  }
  if (!std::isfinite(g.cell_volume) || g.cell_volume <= 0.0) {
    throw std::invalid_argument("grid: degenerate cell volume");
  }
  return g;
}

Grid Grid::index_line(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("grid: a value table needs at least 2 entries");
  }
  return regular({0.0}, {static_cast<double>(n - 1)}, {n});
}

std::size_t Grid::flatten(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    flat = flat * points[k] + idx[k];
  }
  return flat;
}

std::vector<std::size_t> Grid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(points.size());
  for (std::size_t k = points.size(); k-- > 0;) {
    idx[k] = flat % points[k];
    flat /= points[k];
  }
  return idx;
}

std::vector<double> Grid::point(std::size_t flat) const {
  auto idx = unflatten(flat);
  std::vector<double> x(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    x[k] = lower[k] + static_cast<double>(idx[k]) * spacing[k];
  }
  return x;
}

}  // namespace growthflow
