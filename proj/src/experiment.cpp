#include "growthflow/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "growthflow/io.hpp"
#include "growthflow/oracle.hpp"

namespace growthflow {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key \"" + item.key() + "\" in " + where);
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
  if (!root.is_object()) fail(path + ": top level must be an object");
  if (root.contains("schema") && root.at("schema") != 1) fail("unsupported schema");
  return root;
}

double get_num(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + " must be a number");
  return v.get<double>();
}

long get_long(const json& obj, const char* key, const std::string& where, long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key + " must be an integer");
  return v.get<long>();
}

std::string get_str(const json& obj, const char* key, const std::string& where,
                    const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> get_vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where + " must be a non-empty array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) fail(where + " must hold numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

Grid parse_grid(const json& spec, std::size_t dims) {
  if (!spec.is_object()) fail("grid must be an object");
  check_keys(spec, "grid", {"lower", "upper", "points"});
  if (!spec.contains("lower") || !spec.contains("upper") || !spec.contains("points")) {
    fail("grid needs lower, upper and points");
  }
  std::vector<double> lower = get_vec(spec.at("lower"), "grid.lower");
  std::vector<double> upper = get_vec(spec.at("upper"), "grid.upper");
  const json& jp = spec.at("points");
  if (!jp.is_array() || jp.empty()) fail("grid.points must be a non-empty array");
  std::vector<std::size_t> points;
  for (const json& e : jp) {
    if (!e.is_number_integer() || e.get<long long>() < 2) {
      fail("grid.points entries must be integers >= 2");
    }
    points.push_back(e.get<std::size_t>());
  }
  if (lower.size() != dims || upper.size() != dims || points.size() != dims) {
    fail("grid arrays must match objective.dims = " + std::to_string(dims));
  }
  return Grid::regular(std::move(lower), std::move(upper), std::move(points));
}

struct BuiltField {
  PotentialField field;
  bool table = false;
};

BuiltField build_field(const json& root) {
  if (!root.contains("objective")) fail("missing objective");
  const json& obj = root.at("objective");
  if (!obj.is_object()) fail("objective must be an object");
  check_keys(obj, "objective", {"name", "dims", "table", "table_csv"});
  const int sources = obj.contains("name") + obj.contains("table") + obj.contains("table_csv");
  if (sources != 1) fail("objective needs exactly one of name, table, table_csv");

  if (obj.contains("table") || obj.contains("table_csv")) {
    if (obj.contains("dims")) fail("objective.dims only applies to named objectives");
    if (root.contains("grid")) fail("tables use the implied index grid; drop grid");
    std::vector<double> values = obj.contains("table")
                                     ? get_vec(obj.at("table"), "objective.table")
                                     : load_values_csv(get_str(obj, "table_csv", "objective", ""));
    return {table_field(std::move(values)), true};
  }

  const std::string name = get_str(obj, "name", "objective", "");
  const long dims = get_long(obj, "dims", "objective", 1);
  if (dims < 1) fail("objective.dims must be >= 1");
  Objective f;
  if (name == "rastrigin") {
    f = rastrigin;
  } else if (name == "step") {
    f = step_threshold;
  } else {
    fail("unknown objective \"" + name + "\"");
  }

  Grid grid;
  const auto d = static_cast<std::size_t>(dims);
  if (root.contains("grid")) {
    grid = parse_grid(root.at("grid"), d);
  } else if (d == 1) {
    grid = Grid::regular({-4.0}, {6.0}, {501});
  } else if (d == 2) {
    grid = Grid::regular({-4.0, -4.0}, {6.0, 6.0}, {101, 101});
  } else {
    fail("objectives with 3 or more dims need an explicit grid");
  }
  return {sample_field(f, grid), false};
}

void parse_lambda(const json& obj, const std::string& where, LambdaPolicy& policy,
                  double& fixed) {
  if (!obj.contains("lambda")) return;
  const json& lam = obj.at("lambda");
  if (lam.is_string()) {
    if (lam.get<std::string>() != "auto") {
      fail(where + ".lambda must be \"auto\" or a number");
    }
    policy = LambdaPolicy::automatic;
  } else if (lam.is_number()) {
    policy = LambdaPolicy::fixed;
    fixed = lam.get<double>();
  } else {
    fail(where + ".lambda must be \"auto\" or a number");
  }
}

DynamicsConfig parse_dynamics(const json& root, const BuiltField& built) {
  DynamicsConfig config;
  static const json empty = json::object();
  const json& d = root.contains("dynamics") ? root.at("dynamics") : empty;
  if (!d.is_object()) fail("dynamics must be an object");
  check_keys(d, "dynamics",
             {"tau", "dt", "nu", "sigma", "l", "lambda", "lambda_margin", "max_steps",
              "theta_stop", "eps_stop", "nu_decay", "nu_floor"});
  config.tau = get_num(d, "tau", "dynamics", config.tau);
  config.dt = get_num(d, "dt", "dynamics", config.dt);
  config.l.sigma = get_num(d, "sigma", "dynamics", config.l.sigma);
  const std::string kind = get_str(d, "l", "dynamics", "shifted_affine");
  if (kind == "shifted_affine") {
    config.l.kind = LKind::shifted_affine;
  } else if (kind == "damped_affine") {
    config.l.kind = LKind::damped_affine;
  } else {
    fail("dynamics.l must be shifted_affine or damped_affine");
  }
  parse_lambda(d, "dynamics", config.lambda_policy, config.lambda_fixed);
  config.lambda_margin = get_num(d, "lambda_margin", "dynamics", config.lambda_margin);
  config.max_steps = get_long(d, "max_steps", "dynamics", config.max_steps);
  config.theta_stop = get_num(d, "theta_stop", "dynamics", config.theta_stop);
  config.eps_stop = get_num(d, "eps_stop", "dynamics", config.eps_stop);
  config.nu_decay = get_num(d, "nu_decay", "dynamics", config.nu_decay);
  config.nu_floor = get_num(d, "nu_floor", "dynamics", config.nu_floor);
  if (d.contains("nu")) {
    config.nu = get_num(d, "nu", "dynamics", config.nu);
  } else if (built.table) {
    const OracleReport probe = brute_force_argmin(built.field);
    if (probe.min_gap > 0.0) {
      config.nu = 0.1 * probe.min_gap;
    }
  }
  return config;
}

SortMode parse_mode(const std::string& text) {
  if (text == "linear") return SortMode::linear;
  if (text == "constant") return SortMode::constant;
  fail("mode must be linear or constant");
}

std::uint64_t parse_seed(const json& root) {
  if (!root.contains("seed")) return 0;
  const json& s = root.at("seed");
  if (!s.is_number_integer() || s.get<long long>() < 0) {
    fail("seed must be a nonnegative integer");
  }
  return s.get<std::uint64_t>();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void finish_out(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace

Experiment load_experiment(const std::string& path) {
  const json root = load_json(path);
  check_keys(root, "config",
             {"schema", "seed", "objective", "grid", "dynamics", "init", "measurement"});
  BuiltField built = build_field(root);
  Experiment exp;
  exp.dynamics = parse_dynamics(root, built);
  exp.field = std::move(built.field);

  const std::string init = get_str(root, "init", "config", "uniform");
  if (init == "uniform") {
    exp.random_init = false;
  } else if (init == "random") {
    exp.random_init = true;
  } else {
    fail("init must be uniform or random");
  }
  const std::string measurement = get_str(root, "measurement", "config", "argmax");
  if (measurement == "argmax") {
    exp.readout = ReadoutMode::argmax;
  } else if (measurement == "sample") {
    exp.readout = ReadoutMode::sample;
  } else {
    fail("measurement must be argmax or sample");
  }
  exp.seed = parse_seed(root);
  exp.dynamics.validate();
  return exp;
}

SortJob load_sort_job(const std::string& path) {
  const json root = load_json(path);
  check_keys(root, "config", {"schema", "sort"});
  if (!root.contains("sort")) fail("missing sort section");
  const json& s = root.at("sort");
  if (!s.is_object()) fail("sort must be an object");
  check_keys(s, "sort",
             {"values", "values_csv", "mode", "sigma", "tau", "dt", "lambda", "margin",
              "theta_win", "round_tick_cap", "nu_gap_factor", "nu0", "ramp_rate", "nu_final",
              "theta_act", "settle_ticks", "mass_floor"});

  SortJob job;
  const bool inline_values = s.contains("values");
  if (inline_values == s.contains("values_csv")) {
    fail("sort needs exactly one of values, values_csv");
  }
  job.values = inline_values ? get_vec(s.at("values"), "sort.values")
                             : load_values_csv(get_str(s, "values_csv", "sort", ""));

  SortConfig& c = job.config;
  if (s.contains("mode")) c.mode = parse_mode(get_str(s, "mode", "sort", "linear"));
  c.sigma = get_num(s, "sigma", "sort", c.sigma);
  c.tau = get_num(s, "tau", "sort", c.tau);
  c.dt = get_num(s, "dt", "sort", c.dt);
  parse_lambda(s, "sort", c.lambda_policy, c.lambda_fixed);
  c.margin = get_num(s, "margin", "sort", c.margin);
  c.theta_win = get_num(s, "theta_win", "sort", c.theta_win);
  c.round_tick_cap = get_long(s, "round_tick_cap", "sort", c.round_tick_cap);
  c.nu_gap_factor = get_num(s, "nu_gap_factor", "sort", c.nu_gap_factor);
  c.nu0 = get_num(s, "nu0", "sort", c.nu0);
  c.ramp_rate = get_num(s, "ramp_rate", "sort", c.ramp_rate);
  c.nu_final = get_num(s, "nu_final", "sort", c.nu_final);
  c.theta_act = get_num(s, "theta_act", "sort", c.theta_act);
  c.settle_ticks = get_long(s, "settle_ticks", "sort", c.settle_ticks);
  c.mass_floor = get_num(s, "mass_floor", "sort", c.mass_floor);
  c.validate();
  return job;
}

int cmd_optimize(const OptimizeOptions& options) {
  Experiment exp = load_experiment(options.config_path);
  if (options.seed) exp.seed = *options.seed;

  std::vector<long> snapshots = options.snapshots;
  for (long s : snapshots) {
    if (s < 0) fail("snapshot steps must be nonnegative");
  }
  std::sort(snapshots.begin(), snapshots.end());
  snapshots.erase(std::unique(snapshots.begin(), snapshots.end()), snapshots.end());

  const OracleReport oracle = brute_force_argmin(exp.field);
  DriverState initial = exp.random_init
                            ? random_init(exp.field.grid, exp.dynamics.nu, exp.seed)
                            : uniform_init(exp.field.grid, exp.dynamics.nu);
  Measurement measurement(exp.readout, exp.seed + 1);

  const Grid& grid = exp.field.grid;
  fs::create_directories(options.out_dir);
  const fs::path trace_path = fs::path(options.out_dir) / "trace.csv";
  std::ofstream trace = open_out(trace_path);
  trace << "step,time,entropy,max_mass";
  for (std::size_t d = 1; d <= grid.dims(); ++d) {
    trace << ",argmax_x" << d;
  }
  trace << ",expected_q,energy\n";

  auto write_snapshot = [&](long step, std::span<const double> h) {
    const fs::path path =
        fs::path(options.out_dir) / ("snapshot_" + std::to_string(step) + ".csv");
    std::ofstream snap = open_out(path);
    for (std::size_t d = 1; d <= grid.dims(); ++d) {
      snap << 'x' << d << ',';
    }
    snap << "h\n";
    for (std::size_t i = 0; i < grid.cells; ++i) {
      for (double coord : grid.point(i)) {
        snap << g17(coord) << ',';
      }
      snap << g17(h[i]) << '\n';
    }
    finish_out(snap, path);
  };

  const StepObserver observer = [&](const TraceRow& row, std::span<const double> h) {
    trace << row.step << ',' << g17(row.time) << ',' << g17(row.entropy) << ','
          << g17(row.max_mass);
    for (double coord : grid.point(row.argmax_cell)) {
      trace << ',' << g17(coord);
    }
    trace << ',' << g17(row.expected_q) << ',' << g17(row.energy) << '\n';
    if (std::binary_search(snapshots.begin(), snapshots.end(), row.step)) {
      write_snapshot(row.step, h);
    }
  };

  RunResult result = run(std::move(initial), exp.field, exp.dynamics, observer);
  finish_out(trace, trace_path);

  const Argmax top = argmax_mass(result.state);
  const std::vector<double> point = readout(result.state, measurement);
  const bool agreement = oracle.agrees(top.cell);

  ordered report;
  report["schema"] = 1;
  report["argmax"] = grid.point(top.cell);
  report["argmax_cell"] = top.cell;
  report["argmax_tied"] = top.tied;
  report["q_at_argmax"] = exp.field.q[top.cell];
  report["oracle_agreement"] = agreement;
  report["oracle_cell"] = oracle.predicted_cell;
  report["oracle_unique"] = oracle.unique;
  report["oracle_q_min"] = oracle.q_min;
  report["stop_reason"] = to_string(result.reason);
  report["steps"] = result.steps;
  report["lambda"] = result.lambda_used;
  report["nu"] = result.nu_used;
  report["readout"] = point;
  report["readout_mode"] = exp.readout == ReadoutMode::argmax ? "argmax" : "sample";
  report["seed"] = exp.seed;

  const fs::path report_path = fs::path(options.out_dir) / "report.json";
  std::ofstream out = open_out(report_path);
  out << report.dump(2) << "\n";
  finish_out(out, report_path);

  log_info("optimize: stopped by " + std::string(to_string(result.reason)) + " after " +
           std::to_string(result.steps) + " steps; oracle " +
           (agreement ? "agrees" : "disagrees"));
  return agreement ? 0 : 2;
}

int cmd_sort(const SortOptions& options) {
  SortJob job = load_sort_job(options.config_path);
  if (options.mode) {
    job.config.mode = parse_mode(*options.mode);
  }
  const bool linear = job.config.mode == SortMode::linear;
  const SortResult result =
      linear ? linear_sort(job.values, job.config) : constant_time_sort(job.values, job.config);

  fs::create_directories(options.out_dir);
  const fs::path order_path = fs::path(options.out_dir) / "ordering.csv";
  std::ofstream order = open_out(order_path);
  order << "rank,agent,value\n";
  for (std::size_t i = 0; i < result.order.size(); ++i) {
    order << i + 1 << ',' << result.order[i] << ',' << g17(result.ordered_values[i]) << '\n';
  }
  finish_out(order, order_path);

  const fs::path events_path = fs::path(options.out_dir) / "events.csv";
  std::ofstream events = open_out(events_path);
  events << "tick,agent,event\n";
  for (const SortEvent& e : result.events) {
    events << e.tick << ',' << e.agent << ',' << e.kind << '\n';
  }
  finish_out(events, events_path);

  ordered summary;
  summary["schema"] = 1;
  summary["mode"] = linear ? "linear" : "constant";
  summary["agents"] = job.values.size();
  summary["resolved"] = result.resolved;
  if (result.resolved) {
    summary["failure"] = nullptr;
  } else {
    summary["failure"] = result.failure;
  }
  summary["total_ticks"] = result.total_ticks;
  summary["messages"] = {{"up", result.messages.up_total},
                         {"down", result.messages.down_total},
                         {"total", result.messages.total()}};
  if (linear) {
    ordered rounds = ordered::array();
    for (const RoundRecord& r : result.rounds) {
      ordered row;
      row["round"] = r.round;
      row["winner"] = r.winner;
      row["value"] = r.value;
      row["ticks"] = r.ticks;
      row["active"] = r.active;
      row["nu"] = r.nu;
      row["lambda"] = r.lambda;
      rounds.push_back(std::move(row));
    }
    summary["rounds"] = std::move(rounds);
  } else {
    summary["ramp"] = {{"nu0", result.nu0},
                       {"ramp_rate", result.ramp_rate},
                       {"nu_final", result.nu_final},
                       {"theta_act", result.theta_act},
                       {"settle_ticks", job.config.settle_ticks}};
  }

  const fs::path summary_path = fs::path(options.out_dir) / "messages.json";
  std::ofstream out = open_out(summary_path);
  out << summary.dump(2) << "\n";
  finish_out(out, summary_path);

  if (!result.resolved) {
    log_info("sort: unresolved: " + result.failure);
    return 3;
  }
  std::vector<double> expected(job.values.begin(), job.values.end());
  std::sort(expected.begin(), expected.end());
  if (job.config.sigma > 0.0) {
    std::reverse(expected.begin(), expected.end());
  }
  const bool match = result.ordered_values == expected;
  log_info("sort: " + std::to_string(result.total_ticks) + " ticks, order " +
           (match ? "matches" : "does not match") + " the reference");
  return match ? 0 : 2;
}

int cmd_oracle(const OracleOptions& options) {
  const Experiment exp = load_experiment(options.config_path);
  const OracleReport report = brute_force_argmin(exp.field);

  ordered j;
  j["schema"] = 1;
  j["cells"] = exp.field.grid.cells;
  j["q_min"] = report.q_min;
  j["min_gap"] = report.min_gap;
  j["unique"] = report.unique;
  j["predicted_cell"] = report.predicted_cell;
  j["predicted_point"] = exp.field.grid.point(report.predicted_cell);
  j["argmin_cells"] = report.argmin_cells;

  std::cout << j.dump(2) << "\n";
  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    const fs::path path = fs::path(options.out_dir) / "oracle.json";
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
    finish_out(out, path);
  }
  return 0;
}

}  // namespace growthflow
