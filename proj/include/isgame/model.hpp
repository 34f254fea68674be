#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isgame {

/// Raw parameter values of the linear controller-vs-stopper game.
///
/// Player 1 (the impulse controller) earns the running payoff x - s, pays
/// c + lambda*|delta| per impulse and receives a*x when the game ends.
/// Player 2 (the stopper) earns q - x, receives d + gamma*|delta| per impulse
/// of player 1 and pays b*x at the stopping time. Both discount at rate r; the
/// state is a Brownian motion with volatility sigma.
struct ParamValues {
  double r = 0.0;
  double sigma = 0.0;
  double c = 0.0;
  double d = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double b = 0.0;
  double s = 0.0;
  double q = 0.0;

  friend bool operator==(const ParamValues&, const ParamValues&) = default;
};

/// Thrown when a parameter set violates one of the game's admissibility constraints.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Validated, immutable game parameters.
///
/// Construction enforces r, sigma, c, d, lambda, gamma, s > 0; a, b, q >= 0;
/// a < lambda; b < gamma; 1 - lambda*r > 0; 1 - b*r > 0; 1 - a*r > 0.
class GameParams {
 public:
  explicit GameParams(const ParamValues& v);

  const ParamValues& values() const noexcept { return v_; }

  double r() const noexcept { return v_.r; }
  double sigma() const noexcept { return v_.sigma; }
  double c() const noexcept { return v_.c; }
  double d() const noexcept { return v_.d; }
  double lambda() const noexcept { return v_.lambda; }
  double gamma() const noexcept { return v_.gamma; }
  double a() const noexcept { return v_.a; }
  double b() const noexcept { return v_.b; }
  double s() const noexcept { return v_.s; }
  double q() const noexcept { return v_.q; }

  /// Copy with one field replaced; `name` is a ParamValues field name.
  /// Throws std::out_of_range for an unknown name and InvalidParams if the
  /// result is inadmissible.
  GameParams with(std::string_view name, double value) const;

 private:
  ParamValues v_;
};

/// Names accepted by GameParams::with, in declaration order.
inline constexpr std::string_view kParamNames[] = {"r", "sigma", "c",     "d", "lambda",
                                                   "gamma", "a", "b", "s", "q"};

/// Mutable access to a field by name; nullptr if unknown.
double* param_field(ParamValues& v, std::string_view name) noexcept;
double param_field(const ParamValues& v, std::string_view name);

/// Coefficients of the homogeneous parts of phi1 and phi2.
struct OdeCoefficients {
  double c11 = 0.0;
  double c12 = 0.0;
  double c21 = 0.0;
  double c22 = 0.0;
};

/// sqrt(2 r / sigma^2).
double theta(const GameParams& p) noexcept;

// phi1(x) = C11 e^{theta x} + C12 e^{-theta x} + (x - s)/r
double phi1(double x, const OdeCoefficients& co, const GameParams& p) noexcept;
double phi1_prime(double x, const OdeCoefficients& co, const GameParams& p) noexcept;
double phi1_second(double x, const OdeCoefficients& co, const GameParams& p) noexcept;

// phi2(x) = C21 e^{theta x} + C22 e^{-theta x} + (q - x)/r
double phi2(double x, const OdeCoefficients& co, const GameParams& p) noexcept;
double phi2_prime(double x, const OdeCoefficients& co, const GameParams& p) noexcept;
double phi2_second(double x, const OdeCoefficients& co, const GameParams& p) noexcept;

/// sigma^2/2 phi_i'' - r phi_i + running payoff_i, from the analytic second derivative.
double ode_residual1(double x, const OdeCoefficients& co, const GameParams& p) noexcept;
double ode_residual2(double x, const OdeCoefficients& co, const GameParams& p) noexcept;

}  // namespace isgame
