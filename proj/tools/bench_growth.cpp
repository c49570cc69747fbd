#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "growthflow/functional.hpp"
#include "growthflow/kernels.hpp"
#include "growthflow/state.hpp"

namespace {

using growthflow::LFunctional;
using growthflow::Rng;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Instance {
  std::vector<double> h;
  std::vector<double> q;
  double dv = 1.0;
};

Instance make_instance(std::size_t n, Rng& rng) {
  Instance inst;
  inst.h.resize(n);
  inst.q.resize(n);
  inst.dv = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.h[i] = 1.0 - rng.u01();
    inst.q[i] = rng.u01();
    total += inst.h[i];
  }
  for (double& v : inst.h) {
    v /= total * inst.dv;
  }
  return inst;
}

}  // namespace

int main() {
  const LFunctional l{};
  const double nu = 1.0;
  const double lambda = 2.0;
  const double alpha = 0.25;

#if defined(_OPENMP)
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled (serial build)\n");
#endif
  std::printf("%10s %6s %12s %12s %9s %12s\n", "cells", "reps", "reference/ms", "blocked/ms",
              "speedup", "max |diff|");

  Rng rng(12345);
  for (std::size_t n = 1u << 12; n <= (1u << 20); n <<= 2) {
    const Instance inst = make_instance(n, rng);
    const int reps = static_cast<int>(std::max<std::size_t>(3, (1u << 22) / n));

    std::vector<double> out_ref(n);
    std::vector<double> out_fast(n);
    std::vector<double> k(n);

    double t0 = now_ms();
    for (int r = 0; r < reps; ++r) {
      growthflow::reference::growth_step(inst.h, inst.q, l, nu, lambda, alpha, inst.dv, out_ref);
    }
    const double ref_ms = (now_ms() - t0) / reps;

    t0 = now_ms();
    for (int r = 0; r < reps; ++r) {
      const auto summary =
          growthflow::kernels::interaction_kernel(inst.h, inst.q, l, nu, lambda, inst.dv, k);
      growthflow::kernels::blend_kernel(inst.h, k, summary.z, alpha, inst.dv, out_fast);
    }
    const double fast_ms = (now_ms() - t0) / reps;

    double max_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      max_diff = std::max(max_diff, std::fabs(out_ref[i] - out_fast[i]));
    }
    std::printf("%10zu %6d %12.4f %12.4f %9.2f %12.3e\n", n, reps, ref_ms, fast_ms,
                ref_ms / fast_ms, max_diff);
  }
  return 0;
}
