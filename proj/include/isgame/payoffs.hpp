#pragma once

#include "isgame/model.hpp"
#include "isgame/type1.hpp"
#include "isgame/type2.hpp"

namespace isgame {

enum class EquilibriumKind { type1, type2 };

const char* to_string(EquilibriumKind k) noexcept;

/// The three pieces of the candidate payoffs:
/// intervention (-inf, x1_bar], continuation (x1_bar, x2_bar), stopping [x2_bar, inf).
enum class Region { intervention, continuation, stopping };

/// Candidate equilibrium payoffs W1 (controller) and W2 (stopper) built from
/// threshold data and ODE coefficients.
///
/// On the intervention piece the controller jumps to `target`
/// (x1_star for Type I, x2_bar for Type II), so
///   W1(x) = W1(target) - c - lambda (target - x),
///   W2(x) = W2(target) + d + gamma (target - x).
/// On the continuation piece W1 = phi1, W2 = phi2; on the stopping piece
/// W1 = a x, W2 = -b x.
class PiecewisePayoff {
 public:
  /// Requires x1_bar < target <= x2_bar (target < x2_bar for Type I).
  PiecewisePayoff(EquilibriumKind kind, double x1_bar, double target, double x2_bar,
                  const OdeCoefficients& coeffs, const GameParams& params);

  static PiecewisePayoff from(const Type1Equilibrium& eq, const GameParams& p);
  static PiecewisePayoff from(const Type2Equilibrium& eq, const GameParams& p);

  EquilibriumKind kind() const noexcept { return kind_; }
  double x1_bar() const noexcept { return x1_bar_; }
  double target() const noexcept { return target_; }
  double x2_bar() const noexcept { return x2_bar_; }
  const OdeCoefficients& coeffs() const noexcept { return coeffs_; }
  const GameParams& params() const noexcept { return params_; }

  Region region(double x) const noexcept;

  double w1(double x) const noexcept { return w1_on(region(x), x); }
  double w2(double x) const noexcept { return w2_on(region(x), x); }
  double w1_prime(double x) const noexcept { return w1_prime_on(region(x), x); }
  double w2_prime(double x) const noexcept { return w2_prime_on(region(x), x); }
  double w1_second(double x) const noexcept { return w1_second_on(region(x), x); }
  double w2_second(double x) const noexcept { return w2_second_on(region(x), x); }

  // Piece formulas evaluated at any x, used for one-sided limits at thresholds.
  double w1_on(Region g, double x) const noexcept;
  double w2_on(Region g, double x) const noexcept;
  double w1_prime_on(Region g, double x) const noexcept;
  double w2_prime_on(Region g, double x) const noexcept;
  double w1_second_on(Region g, double x) const noexcept;
  double w2_second_on(Region g, double x) const noexcept;

  // Homogeneous-solution sums evaluated relative to x2_bar to keep the
  // exponentials bounded: phi1(x) = k11 e^{th(x-x2)} + k12 e^{-th(x-x2)} + (x-s)/r.
  double phi1(double x) const noexcept;
  double phi1_prime(double x) const noexcept;
  double phi1_second(double x) const noexcept;
  double phi2(double x) const noexcept;
  double phi2_prime(double x) const noexcept;
  double phi2_second(double x) const noexcept;

  /// Optimal impulse size (target - x) for x <= target, else 0.
  double delta(double x) const noexcept;
  /// W1(x + delta(x)) - c - lambda |delta(x)|
  double m_op(double x) const noexcept;
  /// W2(x + delta(x)) + d + gamma |delta(x)|
  double h_op(double x) const noexcept;
  /// W1(y) - lambda y; its global maximiser is the impulse target.
  double gamma_fn(double y) const noexcept { return w1(y) - params_.lambda() * y; }

 private:
  double hom1(double x) const noexcept;
  double hom2(double x) const noexcept;
  double hom1_prime(double x) const noexcept;
  double hom2_prime(double x) const noexcept;

  EquilibriumKind kind_;
  double x1_bar_;
  double target_;
  double x2_bar_;
  OdeCoefficients coeffs_;
  GameParams params_;
  double theta_;
  // Coefficients rescaled to x2_bar.
  double k11_, k12_, k21_, k22_;
  double w1_target_, w2_target_;
};

}  // namespace isgame
