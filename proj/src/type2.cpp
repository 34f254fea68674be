#include "isgame/type2.hpp"

#include <cmath>

namespace isgame {

std::string Type2Conditions::failures() const {
  std::string out;
  auto add = [&out](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(order_ok, "order");
  add(ne21_ok, "ne21");
  add(ne22_ok, "ne22");
  return out;
}

double x2_bar_controller(double w, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_ar = 1.0 - p.a() * r;
  const double lw = std::log(w);
  const double num = (1.0 - p.lambda() * r) * ((lw - 1.0) * w * w + lw + 1.0) -
                     p.c() * r * th * (w * w + 1.0);
  return num / (th * one_ar * (w - 1.0) * (w - 1.0)) + p.s() / one_ar;
}

double x2_bar_stopper(double w, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_br = 1.0 - p.b() * r;
  const double lw = std::log(w);
  return p.q() / one_br + (w + 1.0) / (th * (w - 1.0)) +
         2.0 * (th * r * p.d() - (1.0 - p.gamma() * r) * lw) * w /
             (th * one_br * (w - 1.0) * (w - 1.0));
}

double g_of_w(double w, const GameParams& p) { return x2_bar_controller(w, p) - x2_bar_stopper(w, p); }

std::vector<double> solve_g(const GameParams& p, const SolverOptions& opt) {
  // G has a double pole at w = 1; scan uniformly in ln w starting just above it.
  const ScalarFn g_log = [&p](double u) { return g_of_w(std::exp(u), p); };
  const double u_lo = 1e-6;
  const double u_hi = std::log(opt.w_max);
  auto roots = scan_roots(g_log, u_lo, u_hi, opt.n_grid, opt.tol);
  if (roots.empty()) {
    throw RootError(RootErrc::empty_root_set,
                    "no root of G on (1, " + std::to_string(opt.w_max) + ")");
  }
  // The pasting equations amplify errors in w by the size of the payoffs.
  for (double& u : roots) u = std::exp(polish_root(g_log, u, 2.0 * opt.tol * std::max(1.0, u)));
  return roots;
}

Type2Thresholds thresholds_type2(double w, const GameParams& p) {
  const double x2 = x2_bar_stopper(w, p);
  const double x2_alt = x2_bar_controller(w, p);
  if (std::abs(x2 - x2_alt) > kX2Agreement * std::max(1.0, std::abs(x2))) {
    throw InconsistentX2("stopping threshold expressions disagree at w=" + std::to_string(w) +
                         ": " + std::to_string(x2) + " vs " + std::to_string(x2_alt));
  }
  return {x2 - std::log(w) / theta(p), x2};
}

OdeCoefficients coefficients_type2(double x1, double x2, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_lr = 1.0 - p.lambda() * r;
  const double one_br = 1.0 - p.b() * r;
  const double base = (p.a() - p.lambda()) * x2 - p.c() + p.s() / r;
  OdeCoefficients co;
  co.c11 = std::exp(-th * x1) / 2.0 * (base - (x1 + 1.0 / th) * one_lr / r);
  co.c12 = std::exp(th * x1) / 2.0 * (base - (x1 - 1.0 / th) * one_lr / r);
  co.c21 = std::exp(-th * x2) / (2.0 * r) * (one_br * (x2 + 1.0 / th) - p.q());
  co.c22 = std::exp(th * x2) / (2.0 * r) * (one_br * (x2 - 1.0 / th) - p.q());
  return co;
}

Type2Conditions check_conditions_type2(double w, const GameParams& p) {
  const double r = p.r();
  const double th = theta(p);
  const double one_br = 1.0 - p.b() * r;
  const double lw = std::log(w);

  Type2Conditions cond;
  cond.ne21_value = (1.0 - p.lambda() * r) * (w - w * lw - 1.0) + p.c() * r * th * w;
  cond.ne21_ok = cond.ne21_value > 0.0;

  cond.ne22_value = one_br * (w * w - 1.0) + 2.0 * (th * r * p.d() - (1.0 - p.gamma() * r) * lw) * w;
  cond.ne22_upper = one_br * (w - 1.0) * (w - 1.0);
  cond.ne22_ok = cond.ne22_value >= -kConditionSlack && cond.ne22_value < cond.ne22_upper;

  cond.order_ok = w > 1.0;
  return cond;
}

Type2Result solve_type2(const GameParams& p, const SolverOptions& opt) {
  Type2Result res;
  try {
    res.roots = solve_g(p, opt);
  } catch (const RootError& e) {
    res.reason = e.what();
    return res;
  }
  std::string inconsistent;
  for (double w : res.roots) {
    Type2Equilibrium eq;
    eq.w_hat = w;
    try {
      eq.thresholds = thresholds_type2(w, p);
    } catch (const InconsistentX2& e) {
      inconsistent += std::string(" ") + e.what();
      continue;
    }
    eq.coeffs = coefficients_type2(eq.thresholds.x1_bar, eq.thresholds.x2_bar, p);
    eq.conditions = check_conditions_type2(w, p);
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
    res.reason += " w=" + std::to_string(eq.w_hat) + "[" + eq.conditions.failures() + "]";
  }
  res.reason += inconsistent;
  return res;
}

}  // namespace isgame
