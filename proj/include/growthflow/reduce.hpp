#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace growthflow {

// Compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Reductions run over fixed-size blocks: per-block partials are accumulated
// serially in index order and combined serially in block order, so the result
// depends only on the block size, never on the number of worker threads.
inline constexpr std::size_t reduce_block = 1024;

inline std::size_t block_count(std::size_t n) {
  return (n + reduce_block - 1) / reduce_block;
}

template <typename F>
double blocked_sum(std::size_t n, F&& term) {
  const std::size_t nb = block_count(n);
  std::vector<double> partial(nb, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * reduce_block;
    const std::size_t end = std::min(begin + reduce_block, n);
    KahanSum acc;
    for (std::size_t i = begin; i < end; ++i) {
      acc.add(term(i));
    }
    partial[static_cast<std::size_t>(b)] = acc.value();
  }
  KahanSum total;
  for (double p : partial) {
    total.add(p);
  }
  return total.value();
}

}  // namespace growthflow
