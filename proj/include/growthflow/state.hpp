#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "growthflow/grid.hpp"

namespace growthflow {

// Driver distribution over grid cells: densities h_i whose masses h_i * dV
// sum to one. Zeros are legal and absorbing under the multiplicative update.
struct DriverState {
  Grid grid;
  std::vector<double> h;
  double budget = 1.0;   // nu
  long step = 0;

  double mass(std::size_t i) const { return h[i] * grid.cell_volume; }
};

// Uniform doubles built directly from the mt19937_64 word stream so the
// sequence is identical on every platform.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed = 0) : engine(seed) {}
  double u01() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
};

enum class ReadoutMode { argmax, sample };

struct Measurement {
  ReadoutMode mode = ReadoutMode::argmax;
  Rng rng;
  Measurement() = default;
  Measurement(ReadoutMode m, std::uint64_t seed) : mode(m), rng(seed) {}
};

DriverState uniform_init(const Grid& grid, double budget);
DriverState random_init(const Grid& grid, double budget, std::uint64_t seed);
DriverState normalize(std::span<const double> values, const Grid& grid);

double total_mass(const DriverState& state);
// Shannon entropy of the masses, 0 log 0 := 0.
double entropy(const DriverState& state);

struct Argmax {
  std::size_t cell = 0;
  double mass = 0.0;
  bool tied = false;   // another cell holds exactly the same density
};
Argmax argmax_mass(const DriverState& state);

std::size_t sample_cell(const DriverState& state, Measurement& measurement);
// Coordinate of the argmax cell or of a sampled cell, per measurement mode.
std::vector<double> readout(const DriverState& state, Measurement& measurement);

double expected_value(const DriverState& state, std::span<const double> per_cell);

}  // namespace growthflow
