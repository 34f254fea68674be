#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isgame/model.hpp"
#include "isgame/type1.hpp"

namespace isgame {

/// The two stopping-threshold expressions disagree at the given w (w is not a root of G).
class InconsistentX2 : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative agreement required between the two stopping-threshold expressions.
inline constexpr double kX2Agreement = 1e-6;

struct Type2Thresholds {
  double x1_bar;  // controller intervenes at or below, jumping straight to x2_bar
  double x2_bar;  // stopper stops at or above
};

struct Type2Conditions {
  bool ne21_ok = false;
  bool ne22_ok = false;
  bool order_ok = false;

  double ne21_value = 0.0;  // must be > 0
  double ne22_value = 0.0;  // must lie in [0, ne22_upper)
  double ne22_upper = 0.0;

  bool all() const noexcept { return ne21_ok && ne22_ok && order_ok; }
  std::string failures() const;
};

struct Type2Equilibrium {
  double w_hat = 0.0;
  Type2Thresholds thresholds{};
  OdeCoefficients coeffs{};
  Type2Conditions conditions{};

  bool valid() const noexcept { return conditions.all(); }
};

struct Type2Result {
  std::vector<double> roots;                     // all roots of G found, ascending
  std::vector<Type2Equilibrium> candidates;      // one per root
  std::optional<Type2Equilibrium> equilibrium;   // smallest valid w
  std::string reason;
};

/// x2_bar from the controller's pasting equations (C1 at x1_bar, C0 at x1_bar and x2_bar).
double x2_bar_controller(double w, const GameParams& p);

/// x2_bar from the stopper's pasting equations (C1, C0 at x2_bar and C0 at x1_bar).
double x2_bar_stopper(double w, const GameParams& p);

/// G(w) = x2_bar_controller(w) - x2_bar_stopper(w), defined for w > 1.
double g_of_w(double w, const GameParams& p);

/// All roots of G on (1, w_max), ascending. Throws RootError(empty_root_set)
/// when none is found.
std::vector<double> solve_g(const GameParams& p, const SolverOptions& opt = {});

/// Thresholds at a root w of G. Throws InconsistentX2 when the two
/// x2_bar expressions differ by more than kX2Agreement relative.
Type2Thresholds thresholds_type2(double w_hat, const GameParams& p);

OdeCoefficients coefficients_type2(double x1_bar, double x2_bar, const GameParams& p);

Type2Conditions check_conditions_type2(double w_hat, const GameParams& p);

Type2Result solve_type2(const GameParams& p, const SolverOptions& opt = {});

}  // namespace isgame
