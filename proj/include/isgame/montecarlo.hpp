#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "isgame/model.hpp"
#include "isgame/payoffs.hpp"

namespace isgame {

class InvalidStrategy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidSimConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Broadie-Glasserman-Kou constant: discrete monitoring of a barrier at H
/// behaves like continuous monitoring at H shifted outward by beta sigma sqrt(dt).
inline constexpr double kBarrierShift = 0.5826;

struct SimConfig {
  double dt = 0.01;
  double horizon = 0.0;  // 0 selects ln(1e3)/r
  long n_paths = 20000;
  std::uint64_t seed = 1;
  bool antithetic = false;
  // Move both thresholds inward by kBarrierShift sigma sqrt(dt) after each
  // diffusion step, so the discretely monitored paths cross them at the same
  // rate as the continuous process.
  bool barrier_correction = true;
};

/// Horizon actually simulated: cfg.horizon, or ln(1e3)/r when it is 0.
double effective_horizon(const SimConfig& cfg, const GameParams& p);

/// Throws InvalidSimConfig unless dt > 0, horizon >= 0, e^{-rT} <= 1e-3,
/// n_paths >= 100 and n_paths is even when antithetic.
void validate(const SimConfig& cfg, const GameParams& p);

/// Threshold strategy pair: P1 jumps from at or below `intervene_below` to
/// `target`, P2 stops at or above `stop_above`. A target at or above
/// stop_above makes every impulse end the game at once.
struct ThresholdStrategy {
  double intervene_below;
  double target;
  double stop_above;

  static ThresholdStrategy from(const PiecewisePayoff& pp) {
    return {pp.x1_bar(), pp.target(), pp.x2_bar()};
  }
};

/// Throws InvalidStrategy unless all finite, intervene_below < stop_above and
/// target > intervene_below.
void validate(const ThresholdStrategy& st);

struct PathOutcome {
  double j1 = 0.0;
  double j2 = 0.0;
  double stop_time = 0.0;  // horizon when the path was not stopped
  long n_interventions = 0;
  bool stopped = false;
};

struct SimEstimate {
  double j1_mean = 0.0;
  double j1_se = 0.0;
  double j2_mean = 0.0;
  double j2_se = 0.0;
  double n_interventions_mean = 0.0;
  double stop_time_mean = 0.0;  // right-censored at the horizon
  double stopped_fraction = 0.0;
  double truncation_weight = 0.0;  // e^{-rT}: discount weight of the ignored tail
  long n_paths = 0;
  double dt = 0.0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
};

/// One controlled path per index, OpenMP-parallel. Path i draws from its own
/// generator seeded by (seed, i) (antithetic pairs share one and negate the
/// increments), so the result does not depend on the thread count.
std::vector<PathOutcome> simulate_paths(double x0, const ThresholdStrategy& st, const GameParams& p,
                                        const SimConfig& cfg);
/// Single-threaded reference for simulate_paths.
std::vector<PathOutcome> simulate_paths_serial(double x0, const ThresholdStrategy& st,
                                               const GameParams& p, const SimConfig& cfg);

/// Fixed-order reduction of path outcomes.
SimEstimate summarize(const std::vector<PathOutcome>& paths, const GameParams& p, const SimConfig& cfg);

SimEstimate simulate(double x0, const ThresholdStrategy& st, const GameParams& p, const SimConfig& cfg);

enum class Lever { intervene_below, target, stop_above };
const char* to_string(Lever l) noexcept;

/// One unilateral deviation: P1 owns intervene_below and target, P2 owns stop_above.
struct Perturbation {
  Lever lever;
  double shift;
};

struct DeviationResult {
  Perturbation perturbation;
  int player;             // 1 or 2, the deviating player
  double deviation_mean;  // deviator's payoff under the perturbed strategy
  double baseline_mean;   // deviator's payoff at equilibrium, same paths
  double diff;            // deviation_mean - baseline_mean
  double diff_se;         // standard error of the paired difference
};

/// Payoff change of the deviating player for each perturbation, using the
/// same random streams in every arm.
std::vector<DeviationResult> best_response_scan(double x0, const PiecewisePayoff& pp, const SimConfig& cfg,
                                                const std::vector<Perturbation>& perturbations);

/// CSV header matching sim_csv_row.
std::string sim_csv_header();
std::string sim_csv_row(double x0, const SimEstimate& e, double w1, double w2);

}  // namespace isgame
