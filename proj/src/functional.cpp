#include "growthflow/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growthflow {

double lambda_floor(double q_min, double q_max, double nu, const LFunctional& l,
                    double margin, double h_max) {
  if (!std::isfinite(q_min) || !std::isfinite(q_max)) {
    throw std::invalid_argument("lambda_floor: non-finite objective range");
  }
  if (!(nu > 0.0) || !(margin > 0.0) || !(h_max > 0.0)) {
    throw std::invalid_argument("lambda_floor: nu, margin and h_max must be positive");
  }
  double adverse = std::max(-l.sigma * q_min, -l.sigma * q_max);
  double worst = adverse / nu;               // -L/nu at h = 0 for the rising kind
  if (!l.rises_with_mass()) {
    worst += h_max;                          // falling kind is worst at full density
  }
  return margin + std::max(0.0, worst);
}

double lambda_auto(const PotentialField& field, double nu, const LFunctional& l,
                   double margin) {
  return lambda_floor(field.q_min, field.q_max, nu, l, margin,
                      1.0 / field.grid.cell_volume);
}

}  // namespace growthflow
