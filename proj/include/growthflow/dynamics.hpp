#pragma once

#include <functional>
#include <span>
#include <vector>

#include "growthflow/functional.hpp"
#include "growthflow/objective.hpp"
#include "growthflow/state.hpp"

namespace growthflow {

struct DynamicsConfig {
  double tau = 1.0;
  double dt = 0.1;
  double nu = 1e-2;
  LFunctional l;
  LambdaPolicy lambda_policy = LambdaPolicy::automatic;
  double lambda_margin = 1.0;
  double lambda_fixed = 0.0;
  long max_steps = 100000;
  double theta_stop = 0.99;    // stop once one cell holds this much mass
  double eps_stop = 1e-12;     // stop once max |h change| * dV falls below
  double nu_decay = 1.0;       // optional geometric budget decrease, 1 = off
  double nu_floor = 0.0;       // decay stops here; required positive if decaying

  double alpha() const { return dt / (tau + dt); }
  void validate() const;
};

enum class StopReason { mass_threshold, stationary, step_limit };
const char* to_string(StopReason reason);

struct TraceRow {
  long step = 0;
  double time = 0.0;
  double entropy = 0.0;
  double max_mass = 0.0;
  std::size_t argmax_cell = 0;
  bool argmax_tied = false;
  double expected_q = 0.0;
  double energy = 0.0;
  double mass_error = 0.0;   // |sum h dV - 1|
  double nu = 0.0;
  double lambda = 0.0;
};

// Invoked after every recorded step (including step 0) with the densities.
using StepObserver = std::function<void(const TraceRow&, std::span<const double>)>;

// K_i = h_i (L(q_i, nu h_i)/nu + lambda); rejects any negative entry.
std::vector<double> interaction(const DriverState& state, const PotentialField& field,
                                double lambda, const LFunctional& l);

// One pure growth move: g = K / integral(K).
DriverState growth_map(const DriverState& state, const PotentialField& field,
                       double lambda, const LFunctional& l);

// Convex blend h' = (1 - alpha) h + alpha g: one implicit step of
// tau dh/dt + h = g(h). Preserves normalization without renormalizing.
DriverState homotopy_step(const DriverState& state, const DriverState& grown, double alpha);

// Multiplicative update in mass coordinates: p_i' = p_i (lambda - grad_i),
// rescaled to keep sum p. Bridges to growth_map under p = nu h dV, grad = -L/nu.
std::vector<double> discrete_growth_update(std::span<const double> p,
                                           std::span<const double> grad, double lambda);

// Scalar surrogate the trajectory descends; dH/dh_i = -L_i dV.
double energy(const DriverState& state, const PotentialField& field, const LFunctional& l);

// First-order gain sum (lambda - grad_i)(after_i - before_i); nonnegative for
// growth-transform moves.
double auxiliary_gain(std::span<const double> p_before, std::span<const double> p_after,
                      std::span<const double> grad, double lambda);

struct RunResult {
  DriverState state;
  std::vector<TraceRow> trace;
  StopReason reason = StopReason::step_limit;
  long steps = 0;
  double lambda_used = 0.0;
  double nu_used = 0.0;
};

RunResult run(DriverState state, const PotentialField& field, const DynamicsConfig& config,
              const StepObserver& observer = {});

}  // namespace growthflow
