#include "cli_app.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "isgame/csv.hpp"
#include "isgame/montecarlo.hpp"
#include "isgame/payoffs.hpp"
#include "isgame/qvi.hpp"
#include "isgame/scenario.hpp"
#include "isgame/sweep.hpp"
#include "isgame/type1.hpp"
#include "isgame/type2.hpp"

namespace isgame::cli {

namespace {

struct Options {
  std::string scenario;
  std::string config_path;
  std::string out_path;
  bool verbose = false;
  bool dump_config = false;
  std::optional<std::uint64_t> seed;
  std::optional<long> paths;
  std::optional<double> dt;
  std::optional<int> grid;
  std::vector<double> x0;
  int type = 0;
  bool force = false;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 11;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sig(double v) { return format_sig(v, 6); }

Config resolve_config(const Options& o) {
  if (!o.scenario.empty() && !o.config_path.empty()) throw InputError("use either --scenario or --config, not both");
  if (o.scenario.empty() && o.config_path.empty()) throw InputError("one of --scenario or --config is required");
  Config cfg;
  if (!o.scenario.empty()) {
    try {
      cfg.params = find_scenario(o.scenario).params;
    } catch (const std::out_of_range& e) {
      throw InputError(e.what());
    }
  } else {
    try {
      cfg = load_config(o.config_path);
    } catch (const ConfigError& e) {
      throw InputError(o.config_path + ": " + e.what());
    }
  }
  if (o.seed) cfg.seed = o.seed;
  if (o.paths) cfg.paths = o.paths;
  if (o.dt) cfg.dt = o.dt;
  if (o.grid) cfg.grid = o.grid;
  return cfg;
}

GameParams make_params(const Config& cfg) {
  try {
    return GameParams(cfg.params);
  } catch (const InvalidParams& e) {
    throw InputError(std::string("invalid parameters: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

struct Solved {
  Type1Result t1;
  Type2Result t2;
  std::vector<PiecewisePayoff> equilibria;  // Type I first
};

Solved solve_all(const GameParams& p) {
  Solved s{solve_type1(p), solve_type2(p), {}};
  if (s.t1.equilibrium) s.equilibria.push_back(PiecewisePayoff::from(*s.t1.equilibrium, p));
  if (s.t2.equilibrium) s.equilibria.push_back(PiecewisePayoff::from(*s.t2.equilibrium, p));
  return s;
}

void print_type1(std::ostream& out, const Type1Equilibrium& e, bool valid) {
  const auto& t = e.thresholds;
  const auto& c = e.conditions;
  fmt::print(out, "  {}: z={} w={}\n", valid ? "equilibrium" : "candidate", sig(e.z_tilde), sig(e.w_tilde));
  fmt::print(out, "    x1_bar={} x1_star={} x2_bar={}\n", sig(t.x1_bar), sig(t.x1_star), sig(t.x2_bar));
  fmt::print(out, "    C11={} C12={} C21={} C22={}\n", sig(e.coeffs.c11), sig(e.coeffs.c12), sig(e.coeffs.c21),
             sig(e.coeffs.c22));
  fmt::print(out, "    ne11={} ({} in [0, {})) ne12={} ({} > 0) order={} second_order={} ({} <= 0)\n",
             c.ne11_ok, sig(c.ne11_value), sig(c.ne11_upper), c.ne12_ok, sig(c.ne12_value), c.order_ok,
             c.second_order_ok, sig(c.phi1_second_at_target));
}

void print_type2(std::ostream& out, const Type2Equilibrium& e, bool valid) {
  const auto& t = e.thresholds;
  const auto& c = e.conditions;
  fmt::print(out, "  {}: w={}\n", valid ? "equilibrium" : "candidate", sig(e.w_hat));
  fmt::print(out, "    x1_bar={} x2_bar={}\n", sig(t.x1_bar), sig(t.x2_bar));
  fmt::print(out, "    C11={} C12={} C21={} C22={}\n", sig(e.coeffs.c11), sig(e.coeffs.c12), sig(e.coeffs.c21),
             sig(e.coeffs.c22));
  fmt::print(out, "    ne21={} ({} > 0) ne22={} ({} in [0, {})) order={}\n", c.ne21_ok, sig(c.ne21_value),
             c.ne22_ok, sig(c.ne22_value), sig(c.ne22_upper), c.order_ok);
}

std::string solve_csv(const Solved& s) {
  std::string out = "kind,valid,x1_bar,target,x2_bar,z_tilde,w,c11,c12,c21,c22,reason\n";
  auto num = [](double v) { return format_double(v); };
  if (s.t1.equilibrium || !s.t1.candidates.empty()) {
    const auto& e = s.t1.equilibrium ? *s.t1.equilibrium : s.t1.candidates.front();
    out += csv_row({"type1", s.t1.equilibrium ? "1" : "0", num(e.thresholds.x1_bar), num(e.thresholds.x1_star),
                    num(e.thresholds.x2_bar), num(e.z_tilde), num(e.w_tilde), num(e.coeffs.c11),
                    num(e.coeffs.c12), num(e.coeffs.c21), num(e.coeffs.c22), s.t1.reason}) +
           "\n";
  } else {
    out += csv_row({"type1", "0", "", "", "", s.t1.z_tilde ? num(*s.t1.z_tilde) : "", "", "", "", "", "",
                    s.t1.reason}) +
           "\n";
  }
  if (s.t2.equilibrium || !s.t2.candidates.empty()) {
    const auto& e = s.t2.equilibrium ? *s.t2.equilibrium : s.t2.candidates.front();
    out += csv_row({"type2", s.t2.equilibrium ? "1" : "0", num(e.thresholds.x1_bar), num(e.thresholds.x2_bar),
                    num(e.thresholds.x2_bar), "", num(e.w_hat), num(e.coeffs.c11), num(e.coeffs.c12),
                    num(e.coeffs.c21), num(e.coeffs.c22), s.t2.reason}) +
           "\n";
  } else {
    out += csv_row({"type2", "0", "", "", "", "", "", "", "", "", "", s.t2.reason}) + "\n";
  }
  return out;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Config cfg = resolve_config(o);
  const GameParams p = make_params(cfg);
  const Solved s = solve_all(p);

  fmt::print(out, "Type I\n");
  if (s.t1.z_tilde) fmt::print(out, "  z_tilde={}\n", sig(*s.t1.z_tilde));
  if (s.t1.equilibrium) print_type1(out, *s.t1.equilibrium, true);
  if (!s.t1.equilibrium) fmt::print(out, "  none: {}\n", s.t1.reason);
  if (o.verbose) {
    for (const auto& c : s.t1.candidates) {
      if (!s.t1.equilibrium || c.w_tilde != s.t1.equilibrium->w_tilde) print_type1(out, c, false);
    }
  }
  fmt::print(out, "Type II\n");
  if (s.t2.equilibrium) print_type2(out, *s.t2.equilibrium, true);
  if (!s.t2.equilibrium) fmt::print(out, "  none: {}\n", s.t2.reason);
  if (o.verbose) {
    for (const auto& c : s.t2.candidates) {
      if (!s.t2.equilibrium || c.w_hat != s.t2.equilibrium->w_hat) print_type2(out, c, false);
    }
  }
  if (!o.out_path.empty()) write_file(o.out_path, solve_csv(s));
  return s.equilibria.empty() ? kNoEquilibrium : kOk;
}

GridSpec grid_for(const PiecewisePayoff& pp, const Config& cfg) {
  const int n = cfg.grid.value_or(10000);
  if (n < 100) throw InputError("--grid must be at least 100");
  return GridSpec::default_for(pp, n);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Config cfg = resolve_config(o);
  const GameParams p = make_params(cfg);
  const Solved s = solve_all(p);
  if (s.equilibria.empty()) {
    fmt::print(out, "no equilibrium\n  type1: {}\n  type2: {}\n", s.t1.reason, s.t2.reason);
    return kNoEquilibrium;
  }
  bool all_pass = true;
  std::string csv = "kind,condition,region,max_violation,argmax,tolerance,n_checked,pass\n";
  for (const auto& pp : s.equilibria) {
    const auto rep = verify(pp, grid_for(pp, cfg));
    all_pass = all_pass && rep.pass;
    fmt::print(out, "{} equilibrium: {} (grid [{}, {}] x {})\n", to_string(pp.kind()),
               rep.pass ? "certified" : "NOT certified", sig(rep.grid.lo), sig(rep.grid.hi), rep.grid.n);
    for (const auto& c : rep.conditions) {
      if (o.verbose || !c.pass) {
        fmt::print(out, "  {:<40} {} max_violation={} at x={} (tol {})\n", c.id, c.pass ? "pass" : "FAIL",
                   sig(c.max_violation), sig(c.argmax), sig(c.tolerance));
      }
    }
    if (o.verbose) out << rep.to_key_value();
    for (const auto& c : rep.conditions) {
      csv += csv_row({to_string(pp.kind()), c.id, c.region, format_double(c.max_violation), format_double(c.argmax),
                      format_double(c.tolerance), std::to_string(c.n_checked), c.pass ? "1" : "0"}) +
             "\n";
    }
  }
  if (!o.out_path.empty()) write_file(o.out_path, csv);
  return all_pass ? kOk : kVerificationFailed;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const Config cfg = resolve_config(o);
  const GameParams p = make_params(cfg);
  const Solved s = solve_all(p);
  if (s.equilibria.empty()) {
    err << "no equilibrium to simulate\n";
    return kNoEquilibrium;
  }
  const PiecewisePayoff* chosen = nullptr;
  for (const auto& pp : s.equilibria) {
    const int k = pp.kind() == EquilibriumKind::type1 ? 1 : 2;
    if (o.type == 0 || o.type == k) {
      chosen = &pp;
      break;
    }
  }
  if (!chosen) {
    err << "no Type " << (o.type == 1 ? "I" : "II") << " equilibrium for these parameters\n";
    return kNoEquilibrium;
  }
  const auto rep = verify(*chosen, grid_for(*chosen, cfg));
  if (!rep.pass && !o.force) {
    err << "equilibrium failed verification; rerun with --force to simulate anyway\n";
    return kVerificationFailed;
  }

  SimConfig sc;
  if (cfg.dt) sc.dt = *cfg.dt;
  if (cfg.horizon) sc.horizon = *cfg.horizon;
  if (cfg.paths) sc.n_paths = *cfg.paths;
  if (cfg.seed) sc.seed = *cfg.seed;
  if (cfg.antithetic) sc.antithetic = *cfg.antithetic;
  try {
    validate(sc, p);
  } catch (const InvalidSimConfig& e) {
    throw InputError(e.what());
  }

  std::vector<double> xs = o.x0;
  if (xs.empty()) {
    const double gap = chosen->x2_bar() - chosen->x1_bar();
    for (int k = 1; k <= 5; ++k) xs.push_back(chosen->x1_bar() + gap * k / 6.0);
  }
  std::string csv = sim_csv_header() + "\n";
  for (double x0 : xs) {
    const auto e = simulate(x0, ThresholdStrategy::from(*chosen), p, sc);
    csv += sim_csv_row(x0, e, chosen->w1(x0), chosen->w2(x0)) + "\n";
    if (o.verbose) {
      fmt::print(err, "x0={} j1={} (se {}) W1={} j2={} (se {}) W2={} interventions={} stop_time={}\n", sig(x0),
                 sig(e.j1_mean), sig(e.j1_se), sig(chosen->w1(x0)), sig(e.j2_mean), sig(e.j2_se),
                 sig(chosen->w2(x0)), sig(e.n_interventions_mean), sig(e.stop_time_mean));
    }
  }
  if (o.out_path.empty()) {
    out << csv;
  } else {
    write_file(o.out_path, csv);
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const Config cfg = resolve_config(o);
  if (o.param.empty()) throw InputError("--param is required");
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(cfg.params, o.param, o.from, o.to, o.steps);
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::string csv = sweep_csv_header() + "\n";
  for (const auto& r : rows) csv += sweep_csv_row(r) + "\n";
  if (o.out_path.empty()) {
    out << csv;
  } else {
    write_file(o.out_path, csv);
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--scenario", o.scenario, "Built-in scenario: type1-A, type1-B, type2-A, type2-B");
  sub->add_option("--config", o.config_path, "key=value parameter file");
  sub->add_option("--out", o.out_path, "Write CSV output to this file");
  sub->add_flag("--verbose", o.verbose, "Print every candidate / condition");
  sub->add_flag("--dump-config", o.dump_config, "Print the resolved config and exit");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Threshold equilibria of the linear impulse-controller vs stopper game"};
  app.name("isgame");
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve for Type I and Type II equilibria");
  auto* verify_cmd = app.add_subcommand("verify", "Solve and check the QVI system on a grid");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo payoffs at the equilibrium strategies");
  auto* sweep = app.add_subcommand("sweep", "Re-solve over a range of one parameter");
  for (auto* sub : {solve, verify_cmd, simulate_cmd, sweep}) add_common(sub, o);

  for (auto* sub : {verify_cmd, simulate_cmd}) {
    sub->add_option("--grid", o.grid, "Verification grid points")->check(CLI::Range(100, 100000000));
  }
  simulate_cmd->add_option("--seed", o.seed, "RNG seed");
  simulate_cmd->add_option("--paths", o.paths, "Number of paths");
  simulate_cmd->add_option("--dt", o.dt, "Time step");
  simulate_cmd->add_option("--x0", o.x0, "Comma-separated starting points")->delimiter(',');
  simulate_cmd->add_option("--type", o.type, "Equilibrium type to simulate (1 or 2)")->check(CLI::Range(1, 2));
  simulate_cmd->add_flag("--force", o.force, "Simulate even if verification fails");
  sweep->add_option("--param", o.param, "c, d, lambda, gamma, a, b, s, q, r or sigma");
  sweep->add_option("--from", o.from, "First value")->required();
  sweep->add_option("--to", o.to, "Last value")->required();
  sweep->add_option("--steps", o.steps, "Number of values (inclusive of both ends)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (o.dump_config) {
      out << dump_config(resolve_config(o));
      return kOk;
    }
    if (solve->parsed()) return cmd_solve(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out, err);
    return cmd_sweep(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace isgame::cli
