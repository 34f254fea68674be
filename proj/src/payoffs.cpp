#include "isgame/payoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace isgame {

const char* to_string(EquilibriumKind k) noexcept { return k == EquilibriumKind::type1 ? "type1" : "type2"; }

PiecewisePayoff::PiecewisePayoff(EquilibriumKind kind, double x1_bar, double target, double x2_bar,
                                 const OdeCoefficients& coeffs, const GameParams& params)
    : kind_(kind),
      x1_bar_(x1_bar),
      target_(target),
      x2_bar_(x2_bar),
      coeffs_(coeffs),
      params_(params),
      theta_(theta(params)) {
  const bool ordered = kind == EquilibriumKind::type1 ? (x1_bar < target && target < x2_bar)
                                                      : (x1_bar < target && target == x2_bar);
  if (!ordered) {
    throw std::invalid_argument("PiecewisePayoff: thresholds out of order");
  }
  const double up = std::exp(theta_ * x2_bar);
  const double down = std::exp(-theta_ * x2_bar);
  k11_ = coeffs.c11 * up;
  k12_ = coeffs.c12 * down;
  k21_ = coeffs.c21 * up;
  k22_ = coeffs.c22 * down;
  w1_target_ = target < x2_bar ? phi1(target) : params.a() * target;
  w2_target_ = target < x2_bar ? phi2(target) : -params.b() * target;
}

PiecewisePayoff PiecewisePayoff::from(const Type1Equilibrium& eq, const GameParams& p) {
  const auto& t = eq.thresholds;
  return PiecewisePayoff(EquilibriumKind::type1, t.x1_bar, t.x1_star, t.x2_bar, eq.coeffs, p);
}

PiecewisePayoff PiecewisePayoff::from(const Type2Equilibrium& eq, const GameParams& p) {
  const auto& t = eq.thresholds;
  return PiecewisePayoff(EquilibriumKind::type2, t.x1_bar, t.x2_bar, t.x2_bar, eq.coeffs, p);
}

Region PiecewisePayoff::region(double x) const noexcept {
  if (x >= x2_bar_) return Region::stopping;
  if (x > x1_bar_) return Region::continuation;
  return Region::intervention;
}

double PiecewisePayoff::hom1(double x) const noexcept {
  const double u = theta_ * (x - x2_bar_);
  return k11_ * std::exp(u) + k12_ * std::exp(-u);
}

double PiecewisePayoff::hom2(double x) const noexcept {
  const double u = theta_ * (x - x2_bar_);
  return k21_ * std::exp(u) + k22_ * std::exp(-u);
}

double PiecewisePayoff::hom1_prime(double x) const noexcept {
  const double u = theta_ * (x - x2_bar_);
  return theta_ * (k11_ * std::exp(u) - k12_ * std::exp(-u));
}

double PiecewisePayoff::hom2_prime(double x) const noexcept {
  const double u = theta_ * (x - x2_bar_);
  return theta_ * (k21_ * std::exp(u) - k22_ * std::exp(-u));
}

double PiecewisePayoff::phi1(double x) const noexcept { return hom1(x) + (x - params_.s()) / params_.r(); }
double PiecewisePayoff::phi1_prime(double x) const noexcept { return hom1_prime(x) + 1.0 / params_.r(); }
double PiecewisePayoff::phi1_second(double x) const noexcept { return theta_ * theta_ * hom1(x); }
double PiecewisePayoff::phi2(double x) const noexcept { return hom2(x) + (params_.q() - x) / params_.r(); }
double PiecewisePayoff::phi2_prime(double x) const noexcept { return hom2_prime(x) - 1.0 / params_.r(); }
double PiecewisePayoff::phi2_second(double x) const noexcept { return theta_ * theta_ * hom2(x); }

double PiecewisePayoff::w1_on(Region g, double x) const noexcept {
  switch (g) {
    case Region::stopping:
      return params_.a() * x;
    case Region::continuation:
      return phi1(x);
    case Region::intervention:
      break;
  }
  return w1_target_ - params_.c() - params_.lambda() * (target_ - x);
}

double PiecewisePayoff::w2_on(Region g, double x) const noexcept {
  switch (g) {
    case Region::stopping:
      return -params_.b() * x;
    case Region::continuation:
      return phi2(x);
    case Region::intervention:
      break;
  }
  return w2_target_ + params_.d() + params_.gamma() * (target_ - x);
}

double PiecewisePayoff::w1_prime_on(Region g, double x) const noexcept {
  switch (g) {
    case Region::stopping:
      return params_.a();
    case Region::continuation:
      return phi1_prime(x);
    case Region::intervention:
      break;
  }
  return params_.lambda();
}

double PiecewisePayoff::w2_prime_on(Region g, double x) const noexcept {
  switch (g) {
    case Region::stopping:
      return -params_.b();
    case Region::continuation:
      return phi2_prime(x);
    case Region::intervention:
      break;
  }
  return -params_.gamma();
}

double PiecewisePayoff::w1_second_on(Region g, double x) const noexcept {
  return g == Region::continuation ? phi1_second(x) : 0.0;
}

double PiecewisePayoff::w2_second_on(Region g, double x) const noexcept {
  return g == Region::continuation ? phi2_second(x) : 0.0;
}

double PiecewisePayoff::delta(double x) const noexcept { return x < target_ ? target_ - x : 0.0; }

double PiecewisePayoff::m_op(double x) const noexcept {
  const double dl = delta(x);
  if (dl > 0.0) {
    return w1_target_ - params_.c() - params_.lambda() * dl;
  }
  return w1(x) - params_.c();
}

double PiecewisePayoff::h_op(double x) const noexcept {
  const double dl = delta(x);
  if (dl > 0.0) {
    return w2_target_ + params_.d() + params_.gamma() * dl;
  }
  return w2(x) + params_.d();
}

}  // namespace isgame
