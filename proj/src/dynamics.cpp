#include "growthflow/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "growthflow/kernels.hpp"
#include "growthflow/reduce.hpp"

namespace growthflow {

void DynamicsConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("dynamics: tau must be positive and finite");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dynamics: dt must be positive and finite");
  }
  if (dt > tau) {
    throw std::invalid_argument("dynamics: dt must not exceed tau (alpha <= 1/2)");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("dynamics: nu must be positive and finite");
  }
  if (!std::isfinite(l.sigma) || l.sigma == 0.0) {
    throw std::invalid_argument("dynamics: sigma must be finite and nonzero");
  }
  if (lambda_policy == LambdaPolicy::automatic) {
    if (!(lambda_margin > 0.0) || !std::isfinite(lambda_margin)) {
      throw std::invalid_argument("dynamics: lambda margin must be positive and finite");
    }
  } else if (!std::isfinite(lambda_fixed) || lambda_fixed < 0.0) {
    throw std::invalid_argument("dynamics: fixed lambda must be finite and nonnegative");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("dynamics: max_steps must be at least 1");
  }
  if (!(theta_stop > 0.0) || !(theta_stop < 1.0)) {
    throw std::invalid_argument("dynamics: theta_stop must lie in (0, 1)");
  }
  if (!(eps_stop >= 0.0) || !std::isfinite(eps_stop)) {
    throw std::invalid_argument("dynamics: eps_stop must be nonnegative and finite");
  }
  if (!(nu_decay > 0.0) || nu_decay > 1.0) {
    throw std::invalid_argument("dynamics: nu_decay must lie in (0, 1]");
  }
  if (nu_decay < 1.0 && !(nu_floor > 0.0)) {
    throw std::invalid_argument("dynamics: budget decay needs a positive nu_floor");
  }
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::mass_threshold: return "mass_threshold";
    case StopReason::stationary: return "stationary";
    case StopReason::step_limit: return "step_limit";
  }
  return "unknown";
}

namespace {

void check_pair(const DriverState& state, const PotentialField& field) {
  if (!(state.grid == field.grid)) {
    throw std::invalid_argument("dynamics: state and field grids differ");
  }
}

}  // namespace

std::vector<double> interaction(const DriverState& state, const PotentialField& field,
                                double lambda, const LFunctional& l) {
  check_pair(state, field);
  std::vector<double> k(state.h.size());
  auto sum = kernels::interaction_kernel(state.h, field.q, l, state.budget, lambda,
                                         state.grid.cell_volume, k);
  if (sum.min_factor < 0.0) {
    throw std::runtime_error("interaction: growth factor negative at cell " +
                             std::to_string(sum.min_factor_cell) + " (lambda too small)");
  }
  return k;
}

DriverState growth_map(const DriverState& state, const PotentialField& field,
                       double lambda, const LFunctional& l) {
  check_pair(state, field);
  DriverState out;
  out.grid = state.grid;
  out.budget = state.budget;
  out.step = state.step;
  out.h.resize(state.h.size());
  auto sum = kernels::interaction_kernel(state.h, field.q, l, state.budget, lambda,
                                         state.grid.cell_volume, out.h);
  if (sum.min_factor < 0.0) {
    throw std::runtime_error("growth_map: growth factor negative at cell " +
                             std::to_string(sum.min_factor_cell) + " (lambda too small)");
  }
  if (!(sum.z > 0.0)) {
    throw std::runtime_error("growth_map: interaction integral vanished");
  }
  for (double& v : out.h) {
    v /= sum.z;
  }
  return out;
}

DriverState homotopy_step(const DriverState& state, const DriverState& grown, double alpha) {
  if (!(state.grid == grown.grid)) {
    throw std::invalid_argument("homotopy_step: grids differ");
  }
  if (state.budget != grown.budget) {
    throw std::invalid_argument("homotopy_step: budgets differ");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("homotopy_step: alpha must lie in (0, 1)");
  }
  DriverState out;
  out.grid = state.grid;
  out.budget = state.budget;
  out.step = state.step + 1;
  out.h.resize(state.h.size());
  for (std::size_t i = 0; i < state.h.size(); ++i) {
    out.h[i] = (1.0 - alpha) * state.h[i] + alpha * grown.h[i];
  }
  return out;
}

std::vector<double> discrete_growth_update(std::span<const double> p,
                                           std::span<const double> grad, double lambda) {
  if (p.size() != grad.size()) {
    throw std::invalid_argument("discrete_growth_update: size mismatch");
  }
  double total = blocked_sum(p.size(), [&](std::size_t i) { return p[i]; });
  KahanSum weighted;
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double factor = lambda - grad[i];
    if (p[i] > 0.0 && !(factor > 0.0)) {
      throw std::runtime_error("discrete_growth_update: nonpositive factor at index " +
                               std::to_string(i));
    }
    out[i] = p[i] * factor;
    weighted.add(out[i]);
  }
  const double scale = total / weighted.value();
  for (double& v : out) {
    v *= scale;
  }
  return out;
}

double energy(const DriverState& state, const PotentialField& field, const LFunctional& l) {
  check_pair(state, field);
  const double dv = state.grid.cell_volume;
  const double nu = state.budget;
  return blocked_sum(state.h.size(), [&](std::size_t i) {
    return l.energy_density(field.q[i], state.h[i], nu) * dv;
  });
}

double auxiliary_gain(std::span<const double> p_before, std::span<const double> p_after,
                      std::span<const double> grad, double lambda) {
  if (p_before.size() != p_after.size() || p_before.size() != grad.size()) {
    throw std::invalid_argument("auxiliary_gain: size mismatch");
  }
  return blocked_sum(p_before.size(), [&](std::size_t i) {
    return (lambda - grad[i]) * (p_after[i] - p_before[i]);
  });
}

RunResult run(DriverState state, const PotentialField& field, const DynamicsConfig& config,
              const StepObserver& observer) {
  config.validate();
  check_pair(state, field);
  if (state.budget != config.nu) {
    throw std::invalid_argument("run: state budget differs from configured nu");
  }
  const double dv = state.grid.cell_volume;
  const double alpha = config.alpha();
  double nu = config.nu;

  auto resolve_lambda = [&](double nu_now) {
    return config.lambda_policy == LambdaPolicy::fixed
               ? config.lambda_fixed
               : lambda_auto(field, nu_now, config.l, config.lambda_margin);
  };
  double lambda = resolve_lambda(nu);

  RunResult out;
  std::vector<double> k(state.h.size());
  std::vector<double> next(state.h.size());

  if (config.lambda_policy == LambdaPolicy::fixed) {
    auto sum = kernels::interaction_kernel(state.h, field.q, config.l, nu, lambda, dv, k);
    if (!(sum.min_factor > 0.0)) {
      throw std::invalid_argument("run: fixed lambda leaves a nonpositive growth factor at cell " +
                                  std::to_string(sum.min_factor_cell));
    }
  }

  auto record = [&]() {
    TraceRow row;
    row.step = state.step;
    row.time = static_cast<double>(state.step) * config.dt;
    row.entropy = entropy(state);
    Argmax am = argmax_mass(state);
    row.max_mass = am.mass;
    row.argmax_cell = am.cell;
    row.argmax_tied = am.tied;
    row.expected_q = expected_value(state, field);
    row.energy = energy(state, field, config.l);
    row.mass_error = std::abs(total_mass(state) - 1.0);
    row.nu = nu;
    row.lambda = lambda;
    out.trace.push_back(row);
    if (observer) {
      observer(row, state.h);
    }
  };

  state.budget = nu;
  record();

  bool stopped = false;
  while (state.step < config.max_steps && !stopped) {
    auto sum = kernels::interaction_kernel(state.h, field.q, config.l, nu, lambda, dv, k);
    if (sum.min_factor < 0.0) {
      throw std::runtime_error("run: growth factor negative at step " +
                               std::to_string(state.step + 1) + ", cell " +
                               std::to_string(sum.min_factor_cell) + " (lambda too small)");
    }
    if (!(sum.z > 0.0)) {
      throw std::runtime_error("run: interaction integral vanished at step " +
                               std::to_string(state.step + 1));
    }
    auto blend = kernels::blend_kernel(state.h, k, sum.z, alpha, dv, next);
    state.h.swap(next);
    state.step += 1;
    record();

    if (blend.max_h * dv >= config.theta_stop) {
      out.reason = StopReason::mass_threshold;
      stopped = true;
    } else if (blend.max_shift <= config.eps_stop) {
      out.reason = StopReason::stationary;
      stopped = true;
    } else if (config.nu_decay < 1.0 && nu > config.nu_floor) {
      nu = std::max(nu * config.nu_decay, config.nu_floor);
      state.budget = nu;
      lambda = resolve_lambda(nu);
    }
  }
  out.steps = state.step;
  out.lambda_used = lambda;
  out.nu_used = nu;
  out.state = std::move(state);
  return out;
}

}  // namespace growthflow
