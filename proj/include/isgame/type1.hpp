#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isgame/model.hpp"
#include "isgame/rootfind.hpp"

namespace isgame {

/// Search settings shared by both equilibrium solvers. The upper bounds cap
/// z and w = exp(theta * gap); gaps beyond ln(1e6)/theta are not searched.
struct SolverOptions {
  double z_max = 1e6;
  double w_max = 1e6;
  int n_grid = kDefaultScanGrid;
  double tol = kDefaultRootTol;
};

/// Slack allowed on the closed side of a non-strict inequality.
inline constexpr double kConditionSlack = 1e-9;

struct Type1Thresholds {
  double x1_bar;   // controller intervenes at or below
  double x1_star;  // post-impulse target
  double x2_bar;   // stopper stops at or above
};

/// Sufficient conditions for a solved (z, w) pair to be a Type I equilibrium.
struct Type1Conditions {
  bool ne11_ok = false;
  bool ne12_ok = false;
  bool order_ok = false;
  bool second_order_ok = false;

  double ne11_value = 0.0;  // (1-br) x2_bar - q; must lie in [0, ne11_upper)
  double ne11_upper = 0.0;  // (1-br)/theta
  double ne12_value = 0.0;  // must be > 0
  double phi1_second_at_target = 0.0;  // must be <= 0

  bool all() const noexcept { return ne11_ok && ne12_ok && order_ok && second_order_ok; }
  /// Comma-separated names of the failing conditions; empty when all hold.
  std::string failures() const;
};

struct Type1Equilibrium {
  double z_tilde = 0.0;
  double w_tilde = 0.0;
  Type1Thresholds thresholds{};
  OdeCoefficients coeffs{};
  Type1Conditions conditions{};

  bool valid() const noexcept { return conditions.all(); }
};

struct Type1Result {
  std::optional<double> z_tilde;
  std::vector<Type1Equilibrium> candidates;  // one per quartic root above z_tilde, ascending w
  std::optional<Type1Equilibrium> equilibrium;  // smallest-w candidate passing every condition
  std::string reason;  // why no equilibrium was returned
};

/// ln z - 2(z-1)/(z+1) - c r theta / (1 - lambda r); strictly increasing on z > 1.
double f_of_z(double z, const GameParams& p);

/// Unique root z > 1 of f_of_z. Throws RootError(not_bracketed) if
/// f_of_z(z_max) < 0.
double solve_f(const GameParams& p, const SolverOptions& opt = {});

/// The expanded quartic polynomial in w (right side minus left side of the
/// reduced stopper pasting condition after eliminating x2_bar).
double quartic_in_w(double w, double z_tilde, const GameParams& p);

/// The same condition before expansion: the stopper's C0-pasting at x1_bar
/// written in (z, w) with x2_bar substituted from x2_bar_type1.
/// Satisfies quartic_in_w = 2 r z w^2 / (z - 1) * w_condition_unexpanded.
double w_condition_unexpanded(double w, double z_tilde, const GameParams& p);

/// Stopping threshold implied by (z, w) via the controller's C0-pasting at x2_bar.
double x2_bar_type1(double z_tilde, double w_tilde, const GameParams& p);

Type1Thresholds thresholds_type1(double z_tilde, double w_tilde, const GameParams& p);

/// Closed-form ODE coefficients given the three thresholds.
OdeCoefficients coefficients_type1(const Type1Thresholds& t, const GameParams& p);

Type1Conditions check_conditions_type1(double z_tilde, double w_tilde, const GameParams& p);

/// Full pipeline: z from f_of_z, candidate w from the quartic, thresholds,
/// coefficients and conditions for each candidate.
Type1Result solve_type1(const GameParams& p, const SolverOptions& opt = {});

}  // namespace isgame
