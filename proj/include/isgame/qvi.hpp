#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isgame/payoffs.hpp"

namespace isgame {

class GridTooCoarse : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 10000;

  /// [x1_bar - 3 gap, x2_bar + 3 gap] with gap = x2_bar - x1_bar.
  static GridSpec default_for(const PiecewisePayoff& pp, int n = 10000);
};

struct VerifyTolerances {
  double analytic = 1e-7;    // QVI relations, region identities, inequalities
  double fd = 1e-4;          // analytic vs finite-difference second derivatives
  double pasting = 1e-6;     // pasting residuals and continuity jumps
  double derivative = 1e-5;  // one-sided derivative mismatch where C1 is required
};

struct ConditionRecord {
  std::string id;
  std::string region;
  double max_violation = 0.0;
  double argmax = 0.0;  // location of the worst violation (threshold for point checks)
  double tolerance = 0.0;
  long n_checked = 0;
  bool pass = true;
};

struct QviReport {
  std::vector<ConditionRecord> conditions;
  bool pass = false;
  GridSpec grid{};

  const ConditionRecord* find(const std::string& id) const;
  /// Flat `key=value` lines: overall pass, grid, then `<id>.<field>=...` per condition.
  std::string to_key_value() const;
  /// Header plus one row per condition.
  std::string to_csv() const;
};

struct PastingResidual {
  std::string id;
  std::string equation;
  double residual;  // lhs - rhs
  double scale;     // max(|lhs|, |rhs|)
};

struct InequalityCheck {
  std::string name;
  double value;
  std::string requirement;  // e.g. ">= 0"
  bool pass;
};

/// Residuals of the 7 (Type I) or 6 (Type II) smooth-pasting equations.
std::vector<PastingResidual> pasting_report(const PiecewisePayoff& pp);

/// Scalar inequalities the verification argument reduces to at the thresholds.
std::vector<InequalityCheck> verification_inequalities(const PiecewisePayoff& pp);

/// Checks the six QVI relations of the linear game on a grid together with
/// the region identities, impulse optimality, continuity and C1 pasting,
/// pasting residuals, scalar inequalities, finite-difference agreement of
/// second derivatives and the closed-form tail arguments. Grid evaluation
/// runs under OpenMP. Throws GridTooCoarse if grid.n < 100.
QviReport verify(const PiecewisePayoff& pp, const GridSpec& grid, const VerifyTolerances& tol = {});

/// Single-threaded reference; produces a report identical to verify.
QviReport verify_serial(const PiecewisePayoff& pp, const GridSpec& grid,
                        const VerifyTolerances& tol = {});

}  // namespace isgame
