#include "isgame/type1.hpp"

#include <cmath>

namespace isgame {

std::string Type1Conditions::failures() const {
  std::string out;
  auto add = [&out](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(order_ok, "order");
  add(ne11_ok, "ne11");
  add(ne12_ok, "ne12");
  add(second_order_ok, "second_order");
  return out;
}

double f_of_z(double z, const GameParams& p) {
  return std::log(z) - 2.0 * (z - 1.0) / (z + 1.0) -
         p.c() * p.r() * theta(p) / (1.0 - p.lambda() * p.r());
}

double solve_f(const GameParams& p, const SolverOptions& opt) {
  const ScalarFn f = [&p](double z) { return f_of_z(z, p); };
  const double lo = 1.0 + 1e-9;
  const double f_hi = f(opt.z_max);
  if (f_hi < 0.0) {
    throw RootError(RootErrc::not_bracketed,
                    "f_of_z is still negative at z_max = " + std::to_string(opt.z_max));
  }
  const double z = find_root(f, Bracket{lo, opt.z_max, f(lo), f_hi}, opt.tol);
  return polish_root(f, z, 2.0 * opt.tol * std::max(1.0, z));
}

double x2_bar_type1(double z, double w, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  return ((1.0 - p.lambda() * r) / (th * w) * (w * w - z) / (z + 1.0) + p.s()) / (1.0 - p.a() * r);
}

double quartic_in_w(double w, double z, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_br = 1.0 - p.b() * r;
  const double one_ar = 1.0 - p.a() * r;
  const double k = one_br * (1.0 - p.lambda() * r) / (th * one_ar * (z + 1.0));
  const double gain = ((1.0 - p.gamma() * r) / th * std::log(z) - r * p.d()) / (z - 1.0);

  const double c4 = k;
  const double c3 = one_br * (p.s() / one_ar - 1.0 / th) - p.q();
  const double c2 = 2.0 * z * (gain - k);
  const double c1 = z * (p.q() - one_br * (p.s() / one_ar + 1.0 / th));
  const double c0 = k * z * z;
  return (((c4 * w + c3) * w + c2) * w + c1) * w + c0;
}

double w_condition_unexpanded(double w, double z, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_br = 1.0 - p.b() * r;
  const double x2 = x2_bar_type1(z, w, p);
  return (1.0 - z) / (2.0 * r * w) * (one_br * (x2 + 1.0 / th) - p.q()) +
         w * (z - 1.0) / (2.0 * r * z) * (one_br * (x2 - 1.0 / th) - p.q()) +
         (1.0 - p.gamma() * r) / (th * r) * std::log(z) - p.d();
}

Type1Thresholds thresholds_type1(double z, double w, const GameParams& p) {
  const double th = theta(p);
  const double x2 = x2_bar_type1(z, w, p);
  return {x2 - std::log(w) / th, x2 + (std::log(z) - std::log(w)) / th, x2};
}

OdeCoefficients coefficients_type1(const Type1Thresholds& t, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_lr = 1.0 - p.lambda() * r;
  const double one_br = 1.0 - p.b() * r;
  const double e_star = std::exp(th * t.x1_star);
  const double e_bar = std::exp(th * t.x1_bar);
  OdeCoefficients co;
  co.c11 = -one_lr / (r * th) / (e_star + e_bar);
  // e^{th(x* + x1)} / (e^{th x*} + e^{th x1}) rewritten to avoid the product overflowing.
  co.c12 = one_lr / (r * th) / (1.0 / e_bar + 1.0 / e_star);
  co.c21 = std::exp(-th * t.x2_bar) / (2.0 * r) * (one_br * (t.x2_bar + 1.0 / th) - p.q());
  co.c22 = std::exp(th * t.x2_bar) / (2.0 * r) * (one_br * (t.x2_bar - 1.0 / th) - p.q());
  return co;
}

Type1Conditions check_conditions_type1(double z, double w, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_br = 1.0 - p.b() * r;
  const double one_ar = 1.0 - p.a() * r;
  const double one_lr = 1.0 - p.lambda() * r;

  Type1Conditions cond;
  cond.ne11_value =
      one_br * one_lr * (w * w - z) / (th * w * one_ar * (z + 1.0)) + one_br / one_ar * p.s() - p.q();
  cond.ne11_upper = one_br / th;
  cond.ne11_ok = cond.ne11_value >= -kConditionSlack && cond.ne11_value < cond.ne11_upper;

  const double mid =
      one_br / one_ar * (one_lr * (w * w - z) / (th * w * (z + 1.0)) + p.s()) - p.q();
  cond.ne12_value =
      mid * (w - 1.0) * (w - 1.0) + one_br / th * (1.0 + 2.0 * w * std::log(w) - w * w);
  cond.ne12_ok = cond.ne12_value > 0.0;

  const Type1Thresholds t = thresholds_type1(z, w, p);
  cond.order_ok = 1.0 < z && z < w && t.x1_bar < t.x1_star && t.x1_star < t.x2_bar;

  const OdeCoefficients co = coefficients_type1(t, p);
  cond.phi1_second_at_target = phi1_second(t.x1_star, co, p);
  cond.second_order_ok = cond.phi1_second_at_target <= kConditionSlack;
  return cond;
}

Type1Result solve_type1(const GameParams& p, const SolverOptions& opt) {
  Type1Result res;
  try {
    res.z_tilde = solve_f(p, opt);
  } catch (const RootError& e) {
    res.reason = std::string("no root of f_of_z: ") + e.what();
    return res;
  }
  const double z = *res.z_tilde;
  if (!(opt.w_max > z)) {
    res.reason = "w_max does not exceed z_tilde";
    return res;
  }

  // w = exp(theta * gap) spans many decades; scan uniformly in ln w.
  const ScalarFn quartic_log = [&p, z](double u) { return quartic_in_w(std::exp(u), z, p); };
  const double u_lo = std::log(z) + 1e-12 * std::max(1.0, std::log(z));
  const double u_hi = std::log(opt.w_max);
  auto roots = scan_roots(quartic_log, u_lo, u_hi, opt.n_grid, opt.tol);
  // The pasting equations amplify errors in w by the size of the payoffs.
  for (double& u : roots) u = polish_root(quartic_log, u, 2.0 * opt.tol * std::max(1.0, u));
  if (roots.empty()) {
    res.reason = "no quartic root above z_tilde";
    return res;
  }

  for (double u : roots) {
    Type1Equilibrium eq;
    eq.z_tilde = z;
    eq.w_tilde = std::exp(u);
    eq.thresholds = thresholds_type1(z, eq.w_tilde, p);
    eq.coeffs = coefficients_type1(eq.thresholds, p);
    eq.conditions = check_conditions_type1(z, eq.w_tilde, p);
    res.candidates.push_back(eq);
  }
  for (const auto& eq : res.candidates) {
    if (eq.valid()) {
      res.equilibrium = eq;
      return res;
    }
  }
  res.reason = "conditions failed:";
  for (const auto& eq : res.candidates) {
    res.reason += " w=" + std::to_string(eq.w_tilde) + "[" + eq.conditions.failures() + "]";
  }
  return res;
}

}  // namespace isgame
