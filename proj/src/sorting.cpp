#include "growthflow/sorting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "growthflow/reduce.hpp"

namespace growthflow {

void SortConfig::validate() const {
  if (!(tau > 0.0) || !(dt > 0.0) || dt > tau) {
    throw std::invalid_argument("sort: need 0 < dt <= tau");
  }
  if (!std::isfinite(sigma) || sigma == 0.0) {
    throw std::invalid_argument("sort: sigma must be finite and nonzero");
  }
  if (lambda_policy == LambdaPolicy::automatic) {
    if (!(margin > 0.0)) {
      throw std::invalid_argument("sort: lambda margin must be positive");
    }
  } else if (!(lambda_fixed > 0.0)) {
    throw std::invalid_argument("sort: fixed lambda must be positive");
  }
  if (!(theta_win > 0.0) || !(theta_win < 1.0)) {
    throw std::invalid_argument("sort: theta_win must lie in (0, 1)");
  }
  if (round_tick_cap < 1) {
    throw std::invalid_argument("sort: round_tick_cap must be positive");
  }
  if (!(nu_gap_factor > 0.0)) {
    throw std::invalid_argument("sort: nu_gap_factor must be positive");
  }
  if (nu0 < 0.0 || ramp_rate < 0.0 || nu_final < 0.0 || theta_act < 0.0) {
    throw std::invalid_argument("sort: ramp parameters must be nonnegative");
  }
  if (theta_act >= 1.0) {
    throw std::invalid_argument("sort: theta_act must lie below 1");
  }
  if (settle_ticks < 0) {
    throw std::invalid_argument("sort: settle_ticks must be nonnegative");
  }
  if (!(mass_floor >= 0.0) || mass_floor >= 1.0) {
    throw std::invalid_argument("sort: mass_floor must lie in [0, 1)");
  }
}

AgentNetwork AgentNetwork::from_values(std::span<const double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("sort: need at least 2 values");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("sort: non-finite value at index " + std::to_string(i));
    }
  }
  AgentNetwork net;
  net.agents.resize(values.size());
  const double share = 1.0 / static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    net.agents[i].value = values[i];
    net.agents[i].mass = share;
  }
  return net;
}

std::size_t AgentNetwork::active_count() const {
  std::size_t n = 0;
  for (const Agent& a : agents) {
    if (a.active) ++n;
  }
  return n;
}

double AgentNetwork::active_mass() const {
  KahanSum sum;
  for (const Agent& a : agents) {
    if (a.active) sum.add(a.mass);
  }
  return sum.value();
}

void tick(AgentNetwork& net, const TickParams& params) {
  long active = 0;
  KahanSum z;
  for (Agent& a : net.agents) {
    if (!a.active) continue;
    a.sent = a.emit(params.nu, params.lambda, params.l);
    z.add(a.sent);
    ++active;
  }
  if (active == 0) {
    throw std::logic_error("tick: no active agents");
  }
  for (std::size_t i = 0; i < net.agents.size(); ++i) {
    if (net.agents[i].active && net.agents[i].sent < 0.0) {
      throw std::runtime_error("tick: negative emission from agent " + std::to_string(i) +
                               " (lambda too small)");
    }
  }
  const double zv = z.value();
  if (!(zv > 0.0)) {
    throw std::runtime_error("tick: substrate integral not positive (lambda too small)");
  }
  net.substrate = zv;
  for (Agent& a : net.agents) {
    if (!a.active) continue;
    a.mass = (1.0 - params.alpha) * a.mass + params.alpha * (a.sent / zv);
  }
  if (params.mass_floor > 0.0) {
    KahanSum total;
    for (Agent& a : net.agents) {
      if (!a.active) continue;
      a.mass = std::max(a.mass, params.mass_floor);
      total.add(a.mass);
    }
    const double tv = total.value();
    for (Agent& a : net.agents) {
      if (a.active) a.mass /= tv;
    }
  }
  net.ticks += 1;
  net.messages.per_tick = 2 * active;
  net.messages.up_total += active;
  net.messages.down_total += active;
}

MessageStats message_stats(const AgentNetwork& net) {
  return net.messages;
}

namespace {

void check_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("sort: non-finite value at index " + std::to_string(i));
    }
  }
}

// Smallest difference between adjacent sorted values; 0 if duplicates exist.
double min_adjacent_gap(std::vector<double> sorted) {
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    gap = std::min(gap, sorted[i] - sorted[i - 1]);
  }
  return gap;
}

double resolve_lambda(const SortConfig& config, double vmin, double vmax, double nu,
                      const LFunctional& l) {
  if (config.lambda_policy == LambdaPolicy::fixed) {
    return config.lambda_fixed;
  }
  return lambda_floor(vmin, vmax, nu, l, config.margin, 1.0);   // masses stay within [0, 1]
}

}  // namespace

SortResult linear_sort(std::span<const double> values, const SortConfig& config) {
  config.validate();
  check_finite(values);
  {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("linear_sort: values must be distinct");
    }
  }
  AgentNetwork net = AgentNetwork::from_values(values);
  const LFunctional l{LKind::shifted_affine, config.sigma};
  const double alpha = config.alpha();
  const std::size_t n = net.agents.size();

  SortResult result;
  std::vector<double> remaining(values.begin(), values.end());
  for (int round = 1; static_cast<std::size_t>(round) <= n; ++round) {
    const std::size_t active = net.active_count();
    double vmin = *std::min_element(remaining.begin(), remaining.end());
    double vmax = *std::max_element(remaining.begin(), remaining.end());
    double nu = 1.0;
    if (active > 1) {
      nu = config.nu_gap_factor * min_adjacent_gap(remaining);
    }
    const double lambda = resolve_lambda(config, vmin, vmax, nu, l);
    const double share = 1.0 / static_cast<double>(active);
    for (Agent& a : net.agents) {
      if (a.active) a.mass = share;
    }

    TickParams params{nu, lambda, alpha, l, 0.0};
    const long start = net.ticks;
    std::size_t winner = n;
    while (net.ticks - start < config.round_tick_cap) {
      tick(net, params);
      double best = -1.0;
      std::size_t best_idx = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (net.agents[i].active && net.agents[i].mass > best) {
          best = net.agents[i].mass;
          best_idx = i;
        }
      }
      if (best >= config.theta_win) {
        winner = best_idx;
        break;
      }
    }
    if (winner == n) {
      throw std::runtime_error("linear_sort: round " + std::to_string(round) +
                               " found no winner within " + std::to_string(config.round_tick_cap) +
                               " ticks (remaining gap " +
                               std::to_string(active > 1 ? min_adjacent_gap(remaining) : 0.0) + ")");
    }

    result.rounds.push_back({round, winner, net.agents[winner].value, net.ticks - start,
                             active, nu, lambda});
    result.events.push_back({net.ticks, winner, "win"});
    result.order.push_back(winner);
    result.ordered_values.push_back(net.agents[winner].value);
    net.agents[winner].active = false;
    net.agents[winner].mass = 0.0;
    remaining.erase(std::find(remaining.begin(), remaining.end(), net.agents[winner].value));
  }
  result.total_ticks = net.ticks;
  result.messages = net.messages;
  return result;
}

SortResult constant_time_sort(std::span<const double> values, const SortConfig& config) {
  config.validate();
  check_finite(values);
  const std::size_t n = values.size();
  if (n < 2) {
    throw std::invalid_argument("constant_time_sort: need at least 2 values");
  }

  SortResult result;
  double vmin = *std::min_element(values.begin(), values.end());
  double vmax = *std::max_element(values.begin(), values.end());
  const double spread = vmax - vmin;
  if (!(spread > 0.0)) {
    result.resolved = false;
    result.failure = "values are all equal; nothing distinguishes the agents";
    return result;
  }

  const double theta = config.theta_act > 0.0
                           ? config.theta_act
                           : 2.0 / (static_cast<double>(n) * static_cast<double>(n));
  const double scale = std::fabs(config.sigma);
  const double gap = min_adjacent_gap({values.begin(), values.end()});
  const double nu0 = config.nu0 > 0.0
                         ? config.nu0
                         : scale * (gap > 0.0 ? config.nu_gap_factor * gap : 1e-3 * spread);
  const double rate =
      config.ramp_rate > 0.0 ? config.ramp_rate : scale * spread / (200.0 * config.tau);
  double nu_final = config.nu_final;
  if (!(nu_final > 0.0)) {
    // budget at which the last agent's equilibrium share reaches theta
    const double adverse = config.sigma < 0.0 ? vmax : vmin;
    double lag = 0.0;
    for (double v : values) {
      lag += config.sigma * (v - adverse);
    }
    const double slack = 1.0 - theta * static_cast<double>(n);
    if (!(slack > 0.0)) {
      throw std::invalid_argument("constant_time_sort: theta_act at or above the uniform share "
                                  "is unreachable; lower it");
    }
    nu_final = nu0 + 1.5 * lag / slack;
  }
  if (!(nu_final > nu0)) {
    throw std::invalid_argument("constant_time_sort: nu_final must exceed nu0");
  }

  result.nu0 = nu0;
  result.ramp_rate = rate;
  result.nu_final = nu_final;
  result.theta_act = theta;

  AgentNetwork net = AgentNetwork::from_values(values);
  const LFunctional l{LKind::damped_affine, config.sigma};
  const double alpha = config.alpha();
  const double per_tick = rate * config.dt;
  const long ramp_ticks = static_cast<long>(std::ceil((nu_final - nu0) / per_tick));
  const long total = config.settle_ticks + ramp_ticks;

  std::size_t activated = 0;
  for (long t = 1; t <= total; ++t) {
    const double nu = t <= config.settle_ticks
                          ? nu0
                          : nu0 + per_tick * static_cast<double>(t - config.settle_ticks);
    const double lambda = resolve_lambda(config, vmin, vmax, nu, l);
    tick(net, {nu, lambda, alpha, l, config.mass_floor});
    if (t <= config.settle_ticks) {
      continue;
    }
    std::size_t newly = 0;
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
      Agent& a = net.agents[i];
      if (a.activated_tick < 0 && a.mass >= theta) {
        a.activated_tick = t;
        if (newly == 0) first = i;
        ++newly;
      }
    }
    if (newly > 1) {
      result.resolved = false;
      result.failure = "agents activated on the same tick " + std::to_string(t) +
                       "; lower ramp_rate or raise settle_ticks";
      break;
    }
    if (newly == 1) {
      result.events.push_back({t, first, "activate"});
      result.order.push_back(first);
      result.ordered_values.push_back(net.agents[first].value);
      ++activated;
    }
  }
  if (result.resolved && activated < n) {
    result.resolved = false;
    result.failure = "ramp ended with " + std::to_string(activated) + " of " +
                     std::to_string(n) + " agents activated; raise nu_final or lower theta_act";
  }
  result.total_ticks = net.ticks;
  result.messages = net.messages;
  return result;
}

}  // namespace growthflow
