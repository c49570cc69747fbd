#include "growthflow/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "growthflow/reduce.hpp"

namespace growthflow::kernels {

InteractionSummary interaction_kernel(std::span<const double> h, std::span<const double> q,
                                      const LFunctional& l, double nu, double lambda,
                                      double dv, std::span<double> k) {
  const std::size_t n = h.size();
  const std::size_t nb = block_count(n);
  std::vector<double> partial_sum(nb, 0.0);
  std::vector<double> partial_min(nb, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> partial_min_cell(nb, 0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * reduce_block;
    const std::size_t end = std::min(begin + reduce_block, n);
    KahanSum acc;
    double min_factor = std::numeric_limits<double>::infinity();
    std::size_t min_cell = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const double factor = l.value(q[i], nu * h[i]) / nu + lambda;
      k[i] = h[i] * factor;
      acc.add(k[i]);
      if (h[i] > 0.0 && factor < min_factor) {
        min_factor = factor;
        min_cell = i;
      }
    }
    partial_sum[static_cast<std::size_t>(b)] = acc.value();
    partial_min[static_cast<std::size_t>(b)] = min_factor;
    partial_min_cell[static_cast<std::size_t>(b)] = min_cell;
  }
  InteractionSummary out;
  KahanSum total;
  out.min_factor = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < nb; ++b) {
    total.add(partial_sum[b]);
    if (partial_min[b] < out.min_factor) {
      out.min_factor = partial_min[b];
      out.min_factor_cell = partial_min_cell[b];
    }
  }
  out.z = total.value() * dv;
  return out;
}

BlendSummary blend_kernel(std::span<const double> h, std::span<const double> k, double z,
                          double alpha, double dv, std::span<double> h_out) {
  const std::size_t n = h.size();
  const std::size_t nb = block_count(n);
  std::vector<double> partial_shift(nb, 0.0);
  std::vector<double> partial_max(nb, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * reduce_block;
    const std::size_t end = std::min(begin + reduce_block, n);
    double max_shift = 0.0;
    double max_h = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double g = k[i] / z;
      const double next = (1.0 - alpha) * h[i] + alpha * g;
      h_out[i] = next;
      const double shift = std::abs(next - h[i]) * dv;
      if (shift > max_shift) max_shift = shift;
      if (next > max_h) max_h = next;
    }
    partial_shift[static_cast<std::size_t>(b)] = max_shift;
    partial_max[static_cast<std::size_t>(b)] = max_h;
  }
  BlendSummary out;
  for (std::size_t b = 0; b < nb; ++b) {
    if (partial_shift[b] > out.max_shift) out.max_shift = partial_shift[b];
    if (partial_max[b] > out.max_h) out.max_h = partial_max[b];
  }
  return out;
}

}  // namespace growthflow::kernels

namespace growthflow::reference {

double growth_step(std::span<const double> h, std::span<const double> q,
                   const LFunctional& l, double nu, double lambda, double alpha,
                   double dv, std::span<double> h_out) {
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    h_out[i] = h[i] * (l.value(q[i], nu * h[i]) / nu + lambda);
    sum += h_out[i];
  }
  const double z = sum * dv;
  for (std::size_t i = 0; i < h.size(); ++i) {
    h_out[i] = (1.0 - alpha) * h[i] + alpha * (h_out[i] / z);
  }
  return z;
}

}  // namespace growthflow::reference
