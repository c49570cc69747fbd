#pragma once

#include <cstddef>
#include <span>

#include "growthflow/functional.hpp"

namespace growthflow::kernels {

// K_i = h_i (L(q_i, nu h_i)/nu + lambda). Fills k; returns the integral
// z = sum K dV plus the least growth factor over occupied cells (certificate
// check). Blocked reduction: bitwise identical for any OpenMP thread count.
struct InteractionSummary {
  double z = 0.0;
  double min_factor = 0.0;
  std::size_t min_factor_cell = 0;
};
InteractionSummary interaction_kernel(std::span<const double> h, std::span<const double> q,
                                      const LFunctional& l, double nu, double lambda,
                                      double dv, std::span<double> k);

// h_out_i = (1 - alpha) h_i + alpha (k_i / z); reports the largest per-cell
// mass shift and the largest updated density.
struct BlendSummary {
  double max_shift = 0.0;   // max |h_out - h| * dV
  double max_h = 0.0;
};
BlendSummary blend_kernel(std::span<const double> h, std::span<const double> k, double z,
                          double alpha, double dv, std::span<double> h_out);

}  // namespace growthflow::kernels

namespace growthflow::reference {

// Plain single-threaded step with naive accumulation; kept as the
// cross-check oracle and benchmark baseline for the blocked kernels.
// Returns z = sum K dV. h_out may not alias h.
double growth_step(std::span<const double> h, std::span<const double> q,
                   const LFunctional& l, double nu, double lambda, double alpha,
                   double dv, std::span<double> h_out);

}  // namespace growthflow::reference
