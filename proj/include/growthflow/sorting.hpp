#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "growthflow/functional.hpp"

namespace growthflow {

struct Agent {
  double value = 0.0;       // local q_i, never shared with other agents
  double mass = 0.0;
  bool active = true;
  long activated_tick = -1;
  double sent = 0.0;        // what this agent last reported upward

  // Everything an agent emits is a function of its own fields plus broadcast
  // scalars; agents never see each other.
  double emit(double nu, double lambda, const LFunctional& l) const {
    return mass * (l.value(value, nu * mass) / nu + lambda);
  }
};

struct MessageStats {
  long per_tick = 0;     // 2 x active agents, refreshed each tick
  long up_total = 0;
  long down_total = 0;
  long total() const { return up_total + down_total; }
};

struct AgentNetwork {
  std::vector<Agent> agents;
  double substrate = 0.0;   // last broadcast Z
  long ticks = 0;
  MessageStats messages;

  static AgentNetwork from_values(std::span<const double> values);
  std::size_t active_count() const;
  double active_mass() const;
};

struct TickParams {
  double nu = 1.0;
  double lambda = 0.0;
  double alpha = 0.5;
  LFunctional l;
  double mass_floor = 0.0;   // > 0: clamp then renormalize (constant mode)
};

// One synchronous exchange: active agents report K_i up, the substrate
// integrates and broadcasts Z, agents blend their own masses.
void tick(AgentNetwork& network, const TickParams& params);

MessageStats message_stats(const AgentNetwork& network);

enum class SortMode { linear, constant };

struct SortConfig {
  SortMode mode = SortMode::linear;
  double sigma = -1.0;      // -1 extracts minima first, +1 maxima
  double tau = 1.0;
  double dt = 1.0;
  LambdaPolicy lambda_policy = LambdaPolicy::automatic;
  double lambda_fixed = 0.0;
  double margin = 1.0;
  // linear mode
  double theta_win = 0.99;
  long round_tick_cap = 20000;
  double nu_gap_factor = 0.1;   // per-round nu = factor x smallest remaining gap
  // constant mode; zeros mean "derive from the values"
  double nu0 = 0.0;
  double ramp_rate = 0.0;       // budget increase per unit time
  double nu_final = 0.0;
  double theta_act = 0.0;       // default 2/N of the uniform share 1/N
  long settle_ticks = 2000;     // budget held at nu0 before the ramp
  double mass_floor = 1e-9;

  double alpha() const { return dt / (tau + dt); }
  void validate() const;
};

struct SortEvent {
  long tick = 0;
  std::size_t agent = 0;
  std::string kind;   // "win" (linear) or "activate" (constant)
};

struct RoundRecord {
  int round = 0;
  std::size_t winner = 0;
  double value = 0.0;
  long ticks = 0;
  std::size_t active = 0;   // active agents during the round
  double nu = 0.0;
  double lambda = 0.0;
};

struct SortResult {
  std::vector<std::size_t> order;       // agent indices in emission order
  std::vector<double> ordered_values;
  std::vector<SortEvent> events;
  std::vector<RoundRecord> rounds;      // linear mode only
  long total_ticks = 0;
  MessageStats messages;
  bool resolved = true;
  std::string failure;
  // ramp actually used (constant mode)
  double nu0 = 0.0;
  double ramp_rate = 0.0;
  double nu_final = 0.0;
  double theta_act = 0.0;
};

// N rounds of winner-take-all; each round's extremum is recorded and
// deactivated, survivors restart uniform.
SortResult linear_sort(std::span<const double> values, const SortConfig& config);

// Single run under a budget ramp; an agent is activated the first tick its
// mass reaches theta_act after the settle phase. Tick count depends only on
// the ramp, not on N.
SortResult constant_time_sort(std::span<const double> values, const SortConfig& config);

}  // namespace growthflow
