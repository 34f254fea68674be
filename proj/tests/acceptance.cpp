// End-to-end acceptance checks; prints one PASS/FAIL line per criterion.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "fault_injection.hpp"
#include "helpers.hpp"
#include "isgame/montecarlo.hpp"
#include "isgame/qvi.hpp"
#include "isgame/sweep.hpp"

using namespace isgame;
using testing_support::kScenarioNames;
using testing_support::published_equilibrium;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome golden_type1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* name : {"type1-A", "type1-B"}) {
    const auto& sc = find_scenario(name);
    const auto res = solve_type1(GameParams(sc.params));
    if (!res.equilibrium) {
      o.require(false, std::string(name) + ": no equilibrium (" + res.reason + ")");
      continue;
    }
    const auto& t = res.equilibrium->thresholds;
    const auto& e = *sc.expected;
    o.require(std::abs(t.x1_bar - e.x1_bar) <= 0.02, std::string(name) + fmt(" x1_bar=%.4f", t.x1_bar));
    o.require(std::abs(t.x1_star - e.target) <= 0.02, std::string(name) + fmt(" x1_star=%.4f", t.x1_star));
    o.require(std::abs(t.x2_bar - e.x2_bar) <= 0.02, std::string(name) + fmt(" x2_bar=%.4f", t.x2_bar));
    o.detail += (o.detail.empty() ? "" : ", ") + std::string(name) + fmt(" (%.3f", t.x1_bar) +
                fmt(", %.3f", t.x1_star) + fmt(", %.3f)", t.x2_bar);
  }
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, fmt("runtime %.3fs", secs));
  o.detail += fmt(", %.3fs", secs);
  return o;
}

Outcome golden_type2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* name : {"type2-A", "type2-B"}) {
    const auto& sc = find_scenario(name);
    const auto res = solve_type2(GameParams(sc.params));
    if (!res.equilibrium) {
      o.require(false, std::string(name) + ": no equilibrium (" + res.reason + ")");
      continue;
    }
    const auto& t = res.equilibrium->thresholds;
    const auto& e = *sc.expected;
    o.require(std::abs(t.x1_bar - e.x1_bar) <= 0.05, std::string(name) + fmt(" x1_bar=%.4f", t.x1_bar));
    o.require(std::abs(t.x2_bar - e.x2_bar) <= 0.05, std::string(name) + fmt(" x2_bar=%.4f", t.x2_bar));
    o.detail += (o.detail.empty() ? "" : ", ") + std::string(name) + fmt(" (%.3f", t.x1_bar) +
                fmt(", %.3f)", t.x2_bar);
  }
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, fmt("runtime %.3fs", secs));
  o.detail += fmt(", %.3fs", secs);
  return o;
}

Outcome pasting_residuals() {
  Outcome o;
  double worst = 0.0;
  int count = 0;
  for (const char* name : kScenarioNames) {
    const auto pp = published_equilibrium(name);
    const auto res = pasting_report(pp);
    o.require(res.size() == (pp.kind() == EquilibriumKind::type1 ? 7u : 6u), std::string(name) + " equation count");
    for (const auto& r : res) {
      worst = std::max(worst, std::abs(r.residual));
      ++count;
      o.require(std::abs(r.residual) < 1e-6, std::string(name) + " " + r.id);
    }
  }
  o.detail = std::to_string(count) + " residuals, max " + fmt("%.2e", worst) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome qvi_certification() {
  Outcome o;
  double worst_analytic = 0.0, worst_fd = 0.0;
  for (const char* name : kScenarioNames) {
    const auto pp = published_equilibrium(name);
    const auto rep = verify(pp, GridSpec::default_for(pp));
    o.require(rep.pass, std::string(name) + " not certified");
    for (const auto& c : rep.conditions) {
      if (!c.pass) o.require(false, std::string(name) + " " + c.id);
      if (c.id.rfind("qvi", 0) == 0) worst_analytic = std::max(worst_analytic, c.max_violation);
      if (c.id.rfind("fd_", 0) == 0) worst_fd = std::max(worst_fd, c.max_violation);
    }
  }
  o.require(worst_analytic < 1e-7, "analytic violation too large");
  o.require(worst_fd < 1e-4, "finite-difference mismatch too large");

  int injected = 0, detected = 0;
  for (const char* name : kScenarioNames) {
    const auto pp = published_equilibrium(name);
    const int n = pp.kind() == EquilibriumKind::type1 ? 7 : 6;
    for (int k = 0; k < n; ++k) {
      ++injected;
      const auto bad = testing_support::break_one_equation(pp, k, 1e-3);
      if (!bad) {
        o.require(false, std::string(name) + " could not construct fault " + std::to_string(k + 1));
        continue;
      }
      if (!verify(*bad, GridSpec::default_for(*bad)).pass) ++detected;
    }
  }
  o.require(detected == injected, "undetected faults");
  o.detail = "max QVI violation " + fmt("%.2e", worst_analytic) + ", max FD mismatch " + fmt("%.2e", worst_fd) +
             ", faults detected " + std::to_string(detected) + "/" + std::to_string(injected) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome monte_carlo_agreement() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  SimConfig cfg;
  cfg.n_paths = 20000;
  cfg.dt = 0.01;
  cfg.seed = 20240601;
  double worst_ratio = 0.0;
  int checks = 0;
  for (const char* name : kScenarioNames) {
    const auto pp = published_equilibrium(name);
    const auto& p = pp.params();
    const auto st = ThresholdStrategy::from(pp);
    const double gap = pp.x2_bar() - pp.x1_bar();
    for (int k = 1; k <= 5; ++k) {
      const double x0 = pp.x1_bar() + gap * k / 6.0;
      const auto e = simulate(x0, st, p, cfg);
      const double tol1 = 3 * e.j1_se + 0.005 * std::abs(pp.w1(x0));
      const double tol2 = 3 * e.j2_se + 0.005 * std::abs(pp.w2(x0));
      const double err1 = std::abs(e.j1_mean - pp.w1(x0));
      const double err2 = std::abs(e.j2_mean - pp.w2(x0));
      worst_ratio = std::max({worst_ratio, err1 / tol1, err2 / tol2});
      checks += 2;
      o.require(err1 < tol1, std::string(name) + fmt(" j1 at x0=%.3f", x0));
      o.require(err2 < tol2, std::string(name) + fmt(" j2 at x0=%.3f", x0));
    }
    // Degenerate starts.
    std::vector<double> exact_starts{pp.x2_bar(), pp.x2_bar() + 1.0};
    if (pp.kind() == EquilibriumKind::type2) exact_starts.insert(exact_starts.end(), {pp.x1_bar(), pp.x1_bar() - 3.0});
    SimConfig small = cfg;
    small.n_paths = 100;
    for (double x0 : exact_starts) {
      const auto e = simulate(x0, st, p, small);
      const double rel1 = std::abs(e.j1_mean - pp.w1(x0)) / std::max(1.0, std::abs(pp.w1(x0)));
      const double rel2 = std::abs(e.j2_mean - pp.w2(x0)) / std::max(1.0, std::abs(pp.w2(x0)));
      o.require(rel1 < 1e-13 && rel2 < 1e-13 && e.j1_se == 0.0 && e.j2_se == 0.0,
                std::string(name) + fmt(" degenerate start x0=%.3f", x0));
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, fmt("runtime %.1fs", secs));
  o.detail = std::to_string(checks) + " estimates, worst error/tolerance " + fmt("%.2f", worst_ratio) +
             ", degenerate starts exact, " + fmt("%.1fs", secs) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome best_response() {
  Outcome o;
  SimConfig cfg;
  cfg.n_paths = 20000;
  cfg.seed = 777;
  const std::vector<Perturbation> perts{
      {Lever::intervene_below, -2.0}, {Lever::intervene_below, -1.0}, {Lever::intervene_below, 1.0},
      {Lever::intervene_below, 2.0},  {Lever::stop_above, -2.0},      {Lever::stop_above, -1.0},
      {Lever::stop_above, 1.0},       {Lever::stop_above, 2.0},
  };
  double worst = -INFINITY;
  int n = 0;
  for (const char* name : kScenarioNames) {
    const auto pp = published_equilibrium(name);
    const double x0 = 0.5 * (pp.x1_bar() + pp.x2_bar());
    for (const auto& r : best_response_scan(x0, pp, cfg, perts)) {
      ++n;
      const double z = r.diff_se > 0 ? r.diff / r.diff_se : (r.diff > 0 ? INFINITY : 0.0);
      worst = std::max(worst, z);
      o.require(r.diff <= 3 * r.diff_se, std::string(name) + " " + to_string(r.perturbation.lever) +
                                             fmt("%+.0f", r.perturbation.shift) + fmt(" gains %.4g", r.diff));
    }
  }
  o.detail = std::to_string(n) + " deviations, largest gain " + fmt("%.2f", worst) + " se" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

// Rows with a valid equilibrium of the requested kind, in sweep order.
std::vector<const SweepRow*> valid_rows(const std::vector<SweepRow>& rows, int kind) {
  std::vector<const SweepRow*> out;
  for (const auto& r : rows) {
    if (kind == 1 ? r.type1_valid : r.type2_valid) out.push_back(&r);
  }
  return out;
}

bool monotone(const std::vector<double>& v, int sign) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (sign * (v[i] - v[i - 1]) <= 0.0) return false;
  }
  return v.size() >= 2;
}

Outcome comparative_statics() {
  Outcome o;
  const std::pair<const char*, int> signs[] = {{"a", -1}, {"b", -1}, {"s", -1},      {"c", 1},
                                               {"d", 1},  {"q", 1},  {"lambda", 1}, {"gamma", 1}};
  int bumps = 0, agree = 0;
  {
    const GameParams p = testing_support::params_of("type1-B");
    const double w0 = solve_type1(p).equilibrium->w_tilde;
    for (auto [name, sign] : signs) {
      const double v = param_field(p.values(), name);
      for (double f : {0.99, 1.01}) {
        const auto r = solve_type1(p.with(name, v * f));
        ++bumps;
        const bool ok = !r.candidates.empty() && sign * (r.candidates.front().w_tilde - w0) * (f - 1.0) > 0.0;
        agree += ok ? 1 : 0;
        o.require(ok, std::string("type1-B w_tilde vs ") + name + (f > 1.0 ? " +1%" : " -1%"));
      }
    }
  }
  {
    const GameParams p = testing_support::params_of("type2-B");
    const double w0 = solve_type2(p).equilibrium->w_hat;
    for (auto [name, sign] : signs) {
      const double v = param_field(p.values(), name);
      for (double f : {0.99, 1.01}) {
        const auto roots = solve_g(p.with(name, v * f));
        ++bumps;
        const bool ok = sign * (roots.front() - w0) * (f - 1.0) > 0.0;
        agree += ok ? 1 : 0;
        o.require(ok, std::string("type2-B w_hat vs ") + name + (f > 1.0 ? " +1%" : " -1%"));
      }
    }
  }

  // lambda on type1-B across the figure range, then toward the limit lambda r -> 1.
  const auto& b1 = find_scenario("type1-B").params;
  const auto lam = run_sweep(b1, "lambda", 5.0, 95.0, 46);
  const auto lv = valid_rows(lam, 1);
  std::vector<double> x1, xs, x2;
  for (const auto* r : lv) {
    x1.push_back(r->type1->thresholds.x1_bar);
    xs.push_back(r->type1->thresholds.x1_star);
    x2.push_back(r->type1->thresholds.x2_bar);
  }
  o.require(lv.size() == lam.size(), "lambda sweep: missing Type I equilibria");
  o.require(monotone(x1, -1), "lambda sweep: x1_bar not decreasing");
  o.require(monotone(xs, -1), "lambda sweep: x1_star not decreasing");
  if (!x2.empty()) {
    const auto [mn, mx] = std::minmax_element(x2.begin(), x2.end());
    o.require(*mx - *mn < 0.25 * (x2.front() - x1.front()), "lambda sweep: x2_bar not roughly constant");
    o.require(x2.back() - x1.back() > 3.0 * (x2.front() - x1.front()), "lambda sweep: intervention region not shrinking");
  }
  // The intervention threshold recedes ever faster as lambda r -> 1.
  std::vector<double> lam_probe{95.0, 97.0, 98.0, 99.0}, x1_probe;
  for (double l : lam_probe) {
    const auto r = solve_type1(GameParams(b1).with("lambda", l));
    if (r.equilibrium) x1_probe.push_back(r.equilibrium->thresholds.x1_bar);
  }
  bool accelerating = x1_probe.size() == lam_probe.size();
  for (std::size_t i = 2; accelerating && i < x1_probe.size(); ++i) {
    const double prev = (x1_probe[i - 2] - x1_probe[i - 1]) / (lam_probe[i - 1] - lam_probe[i - 2]);
    const double next = (x1_probe[i - 1] - x1_probe[i]) / (lam_probe[i] - lam_probe[i - 1]);
    accelerating = prev > 0.0 && next > prev;
  }
  o.require(accelerating, "lambda -> 1/r: x1_bar not receding at an increasing rate");

  // c on type1-B: wider impulse, lower x1_bar, higher target, slightly lower x2_bar.
  const auto cs = valid_rows(run_sweep(b1, "c", 10.0, 90.0, 17), 1);
  std::vector<double> c1, cst, c2;
  for (const auto* r : cs) {
    c1.push_back(r->type1->thresholds.x1_bar);
    cst.push_back(r->type1->thresholds.x1_star);
    c2.push_back(r->type1->thresholds.x2_bar);
  }
  o.require(monotone(c1, -1) && monotone(cst, 1) && monotone(c2, -1), "c sweep trends");

  // d and gamma on type1-B and d on type2-B: x2_bar rises.
  for (auto [base, param, from, to, kind] :
       {std::tuple{&b1, "d", 100.0, 200.0, 1}, std::tuple{&b1, "gamma", 10.0, 20.0, 1},
        std::tuple{&find_scenario("type2-B").params, "d", 100.0, 150.0, 2}}) {
    const auto rows = valid_rows(run_sweep(*base, param, from, to, 11), kind);
    std::vector<double> v;
    for (const auto* r : rows) v.push_back(kind == 1 ? r->type1->thresholds.x2_bar : r->type2->thresholds.x2_bar);
    o.require(monotone(v, 1), std::string(param) + " sweep (type" + std::to_string(kind) + "): x2_bar not increasing");
  }
  o.detail = std::to_string(agree) + "/" + std::to_string(bumps) + " bumps with expected sign; lambda sweep " + fmt("x1_bar %.1f", x1.empty() ? NAN : x1.front()) +
             fmt(" -> %.1f", x1.empty() ? NAN : x1.back()) +
             fmt(", %.1f at lambda r = 0.99", x1_probe.empty() ? NAN : x1_probe.back()) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "isgame_acceptance";
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"solve", "--scenario", "type1-A"},
      {"verify", "--scenario", "type2-B"},
      {"simulate", "--scenario", "type1-B", "--paths", "2000", "--seed", "99"},
      {"simulate", "--scenario", "type2-A", "--paths", "2000", "--seed", "5", "--x0", "23,27.5,31"},
      {"sweep", "--scenario", "type1-B", "--param", "lambda", "--from", "5", "--to", "95", "--steps", "10"},
  };
  int compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::vector<std::string> outputs;
    for (int threads : {1, 4, 1}) {
      omp_set_num_threads(threads);
      const auto path = (dir / ("run_" + std::to_string(i) + "_" + std::to_string(outputs.size()) + ".csv")).string();
      auto args = commands[i];
      args.insert(args.end(), {"--out", path});
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      o.require(code == 0, commands[i][0] + " exited " + std::to_string(code));
      outputs.push_back(read_file(path));
    }
    o.require(!outputs[0].empty(), commands[i][0] + " wrote nothing");
    for (std::size_t k = 1; k < outputs.size(); ++k) {
      ++compared;
      o.require(outputs[k] == outputs[0], commands[i][0] + " output differs between runs");
    }
  }
  fs::remove_all(dir);
  o.detail = std::to_string(compared) + " repeated CSV outputs byte-identical (1 and 4 threads)" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"golden Type I thresholds", golden_type1},
      {"golden Type II thresholds", golden_type2},
      {"pasting residuals", pasting_residuals},
      {"QVI certification and fault injection", qvi_certification},
      {"Monte Carlo agreement", monte_carlo_agreement},
      {"best-response property", best_response},
      {"comparative statics", comparative_statics},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
