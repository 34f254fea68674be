#include "isgame/montecarlo.hpp"

#include <cmath>
#include <random>

#include "isgame/csv.hpp"

namespace isgame {

double effective_horizon(const SimConfig& cfg, const GameParams& p) {
  return cfg.horizon > 0.0 ? cfg.horizon : std::log(1e3) / p.r();
}

void validate(const SimConfig& cfg, const GameParams& p) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw InvalidSimConfig("dt must be positive");
  if (!(cfg.horizon >= 0.0) || !std::isfinite(cfg.horizon)) {
    throw InvalidSimConfig("horizon must be non-negative (0 selects the default)");
  }
  const double T = effective_horizon(cfg, p);
  // The default horizon gives exactly 1e-3; allow for rounding in exp/log.
  if (std::exp(-p.r() * T) > 1e-3 * (1.0 + 1e-12)) {
    throw InvalidSimConfig("horizon too short: e^{-rT} must not exceed 1e-3");
  }
  if (cfg.dt > T) throw InvalidSimConfig("dt exceeds the horizon");
  if (cfg.n_paths < 100) throw InvalidSimConfig("n_paths must be at least 100");
  if (cfg.antithetic && cfg.n_paths % 2 != 0) {
    throw InvalidSimConfig("n_paths must be even with antithetic sampling");
  }
}

void validate(const ThresholdStrategy& st) {
  if (!std::isfinite(st.intervene_below) || !std::isfinite(st.target) || !std::isfinite(st.stop_above)) {
    throw InvalidStrategy("strategy thresholds must be finite");
  }
  if (!(st.intervene_below < st.stop_above)) {
    throw InvalidStrategy("intervention threshold must lie below the stopping threshold");
  }
  if (!(st.target > st.intervene_below)) {
    throw InvalidStrategy("impulse target must lie above the intervention threshold");
  }
}

namespace {

struct Stepper {
  const ThresholdStrategy& st;
  const GameParams& p;
  double dt;
  double sqrt_dt;
  double step_discount;
  long n_steps;
  double horizon;
  double shift;

  PathOutcome run(double x0, std::mt19937_64& gen, double sign) const {
    std::normal_distribution<double> normal;
    PathOutcome out;
    double x = x0;
    double disc = 1.0;
    const double vol = p.sigma() * sqrt_dt;
    for (long k = 0; k <= n_steps; ++k) {
      // The start point and post-impulse states are exact; only states reached
      // by a diffusion step see the shifted thresholds.
      const double b = k == 0 ? 0.0 : shift;
      if (x >= st.stop_above - b) {
        stop(out, x, disc, k);
        return out;
      }
      if (x <= st.intervene_below + b) {
        const double jump = st.target - x;
        out.j1 -= disc * (p.c() + p.lambda() * jump);
        out.j2 += disc * (p.d() + p.gamma() * jump);
        ++out.n_interventions;
        x = st.target;
        if (x >= st.stop_above) {
          stop(out, x, disc, k);
          return out;
        }
      }
      if (k == n_steps) break;
      out.j1 += disc * (x - p.s()) * dt;
      out.j2 += disc * (p.q() - x) * dt;
      x += sign * vol * normal(gen);
      disc *= step_discount;
    }
    out.stop_time = horizon;
    return out;
  }

  void stop(PathOutcome& out, double x, double disc, long k) const {
    out.j1 += disc * p.a() * x;
    out.j2 -= disc * p.b() * x;
    out.stop_time = static_cast<double>(k) * dt;
    out.stopped = true;
  }
};

std::vector<PathOutcome> simulate_impl(double x0, const ThresholdStrategy& st, const GameParams& p,
                                       const SimConfig& cfg, bool parallel) {
  validate(cfg, p);
  validate(st);
  const double T = effective_horizon(cfg, p);
  const Stepper stepper{st,
                        p,
                        cfg.dt,
                        std::sqrt(cfg.dt),
                        std::exp(-p.r() * cfg.dt),
                        static_cast<long>(std::ceil(T / cfg.dt - 1e-9)),
                        T,
                        cfg.barrier_correction ? kBarrierShift * p.sigma() * std::sqrt(cfg.dt) : 0.0};

  std::vector<PathOutcome> out(static_cast<std::size_t>(cfg.n_paths));
  const long n = cfg.n_paths;
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (long i = 0; i < n; ++i) {
    const long stream = cfg.antithetic ? i / 2 : i;
    const double sign = cfg.antithetic && (i % 2 == 1) ? -1.0 : 1.0;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(
                                                              static_cast<std::uint64_t>(stream) >> 32)};
    std::mt19937_64 gen(seq);
    out[static_cast<std::size_t>(i)] = stepper.run(x0, gen, sign);
  }
  return out;
}

// Mean and standard error of the mean, antithetic pairs averaged first.
std::pair<double, double> mean_se(const std::vector<double>& v, bool paired) {
  std::vector<double> units;
  if (paired) {
    units.reserve(v.size() / 2);
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) units.push_back(0.5 * (v[i] + v[i + 1]));
  }
  const auto& u = paired ? units : v;
  const double n = static_cast<double>(u.size());
  // Accumulate around the first sample so identical samples give an exact
  // mean and zero spread.
  const double shift = u.empty() ? 0.0 : u.front();
  double sum = 0.0;
  for (double x : u) sum += x - shift;
  const double mean = shift + sum / n;
  double ss = 0.0;
  for (double x : u) ss += (x - shift - sum / n) * (x - shift - sum / n);
  const double var = u.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

std::vector<PathOutcome> simulate_paths(double x0, const ThresholdStrategy& st, const GameParams& p,
                                        const SimConfig& cfg) {
  return simulate_impl(x0, st, p, cfg, true);
}

std::vector<PathOutcome> simulate_paths_serial(double x0, const ThresholdStrategy& st, const GameParams& p,
                                               const SimConfig& cfg) {
  return simulate_impl(x0, st, p, cfg, false);
}

SimEstimate summarize(const std::vector<PathOutcome>& paths, const GameParams& p, const SimConfig& cfg) {
  SimEstimate e;
  std::vector<double> j1(paths.size()), j2(paths.size());
  double count = 0.0, stop_time = 0.0, stopped = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    j1[i] = paths[i].j1;
    j2[i] = paths[i].j2;
    count += static_cast<double>(paths[i].n_interventions);
    stop_time += paths[i].stop_time;
    stopped += paths[i].stopped ? 1.0 : 0.0;
  }
  std::tie(e.j1_mean, e.j1_se) = mean_se(j1, cfg.antithetic);
  std::tie(e.j2_mean, e.j2_se) = mean_se(j2, cfg.antithetic);
  const double n = static_cast<double>(paths.size());
  e.n_interventions_mean = count / n;
  e.stop_time_mean = stop_time / n;
  e.stopped_fraction = stopped / n;
  e.horizon = effective_horizon(cfg, p);
  e.truncation_weight = std::exp(-p.r() * e.horizon);
  e.n_paths = static_cast<long>(paths.size());
  e.dt = cfg.dt;
  e.seed = cfg.seed;
  return e;
}

SimEstimate simulate(double x0, const ThresholdStrategy& st, const GameParams& p, const SimConfig& cfg) {
  return summarize(simulate_paths(x0, st, p, cfg), p, cfg);
}

const char* to_string(Lever l) noexcept {
  switch (l) {
    case Lever::intervene_below:
      return "intervene_below";
    case Lever::target:
      return "target";
    case Lever::stop_above:
      return "stop_above";
  }
  return "?";
}

std::vector<DeviationResult> best_response_scan(double x0, const PiecewisePayoff& pp, const SimConfig& cfg,
                                                const std::vector<Perturbation>& perturbations) {
  const auto& p = pp.params();
  const auto eq = ThresholdStrategy::from(pp);
  const auto base = simulate_paths(x0, eq, p, cfg);
  std::vector<DeviationResult> out;
  for (const auto& pert : perturbations) {
    ThresholdStrategy st = eq;
    int player = 1;
    switch (pert.lever) {
      case Lever::intervene_below:
        st.intervene_below += pert.shift;
        break;
      case Lever::target:
        st.target += pert.shift;
        break;
      case Lever::stop_above:
        st.stop_above += pert.shift;
        player = 2;
        break;
    }
    const auto dev = simulate_paths(x0, st, p, cfg);
    std::vector<double> d(base.size()), b(base.size()), v(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      b[i] = player == 1 ? base[i].j1 : base[i].j2;
      v[i] = player == 1 ? dev[i].j1 : dev[i].j2;
      d[i] = v[i] - b[i];
    }
    const auto [diff, diff_se] = mean_se(d, cfg.antithetic);
    out.push_back({pert, player, mean_se(v, cfg.antithetic).first, mean_se(b, cfg.antithetic).first, diff,
                   diff_se});
  }
  return out;
}

std::string sim_csv_header() { return "x0,j1_mean,j1_se,j2_mean,j2_se,w1,w2,n_paths,dt,T,seed"; }

std::string sim_csv_row(double x0, const SimEstimate& e, double w1, double w2) {
  return csv_row({format_double(x0), format_double(e.j1_mean), format_double(e.j1_se), format_double(e.j2_mean),
                  format_double(e.j2_se), format_double(w1), format_double(w2), std::to_string(e.n_paths),
                  format_double(e.dt), format_double(e.horizon), std::to_string(e.seed)});
}

}  // namespace isgame
