#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace growthflow {

// Regular rectangular lattice over an M-dimensional box, endpoints included.
// Flattened indices are row-major with the last axis fastest.
struct Grid {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> points;   // per-axis counts, each >= 2
  std::vector<double> spacing;       // (upper - lower) / (points - 1)
  double cell_volume = 1.0;
  std::size_t cells = 0;

  static Grid regular(std::vector<double> lower, std::vector<double> upper,
                      std::vector<std::size_t> points);
  // 1-D lattice 0, 1, ..., n-1 with unit spacing; backs value tables.
  static Grid index_line(std::size_t n);

  std::size_t dims() const { return lower.size(); }
  std::size_t flatten(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::vector<double> point(std::size_t flat) const;

  bool operator==(const Grid& other) const = default;
};

}  // namespace growthflow
