#pragma once

#include "growthflow/objective.hpp"

namespace growthflow {

enum class LKind { shifted_affine, damped_affine };

enum class LambdaPolicy { automatic, fixed };

// Coupling between the objective and the driver. shifted_affine rises with h,
// concentrating mass on one cell (winner-take-all); damped_affine falls with
// h, spreading mass across a budget-dependent support (used by the
// constant-mode sorter). sigma scales q: -1 favors minima, +1 maxima.
struct LFunctional {
  LKind kind = LKind::shifted_affine;
  double sigma = -1.0;

  double value(double q, double nu_h) const {
    return kind == LKind::shifted_affine ? nu_h + sigma * q : sigma * q - nu_h;
  }

  // Scalar potential with dH/dh_i = -L(q_i, nu h_i) * dV.
  double energy_density(double q, double h, double nu) const {
    double lin = -sigma * q * h;
    double quad = 0.5 * nu * h * h;
    return kind == LKind::shifted_affine ? lin - quad : lin + quad;
  }

  bool rises_with_mass() const { return kind == LKind::shifted_affine; }
};

// Smallest shift keeping every growth factor (1/nu) L + lambda at or above
// `margin` for all values in [q_min, q_max] and densities in [0, h_max]:
// lambda = margin + max(0, worst-case -L/nu).
double lambda_floor(double q_min, double q_max, double nu, const LFunctional& l,
                    double margin, double h_max);

// Grid version: admissible densities span [0, 1/dV].
double lambda_auto(const PotentialField& field, double nu, const LFunctional& l,
                   double margin);

}  // namespace growthflow
