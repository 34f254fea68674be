#include "isgame/qvi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isgame/csv.hpp"

namespace isgame {

GridSpec GridSpec::default_for(const PiecewisePayoff& pp, int n) {
  const double gap = pp.x2_bar() - pp.x1_bar();
  return {pp.x1_bar() - 3.0 * gap, pp.x2_bar() + 3.0 * gap, n};
}

const ConditionRecord* QviReport::find(const std::string& id) const {
  for (const auto& c : conditions) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::string QviReport::to_key_value() const {
  std::string out;
  out += "pass=" + std::string(pass ? "1" : "0") + "\n";
  out += "grid.lo=" + format_double(grid.lo) + "\n";
  out += "grid.hi=" + format_double(grid.hi) + "\n";
  out += "grid.n=" + std::to_string(grid.n) + "\n";
  for (const auto& c : conditions) {
    out += c.id + ".region=" + c.region + "\n";
    out += c.id + ".max_violation=" + format_double(c.max_violation) + "\n";
    out += c.id + ".argmax=" + format_double(c.argmax) + "\n";
    out += c.id + ".tolerance=" + format_double(c.tolerance) + "\n";
    out += c.id + ".n_checked=" + std::to_string(c.n_checked) + "\n";
    out += c.id + ".pass=" + std::string(c.pass ? "1" : "0") + "\n";
  }
  return out;
}

std::string QviReport::to_csv() const {
  std::string out = "condition,region,max_violation,argmax,tolerance,n_checked,pass\n";
  for (const auto& c : conditions) {
    out += csv_row({c.id, c.region, format_double(c.max_violation), format_double(c.argmax),
                    format_double(c.tolerance), std::to_string(c.n_checked), c.pass ? "1" : "0"}) +
           "\n";
  }
  return out;
}

std::vector<PastingResidual> pasting_report(const PiecewisePayoff& pp) {
  const auto& p = pp.params();
  const double x1 = pp.x1_bar();
  const double x2 = pp.x2_bar();
  const double xt = pp.target();
  std::vector<PastingResidual> out;
  auto add = [&out](std::string id, std::string eq, double lhs, double rhs) {
    out.push_back({std::move(id), std::move(eq), lhs - rhs, std::max(std::abs(lhs), std::abs(rhs))});
  };
  if (pp.kind() == EquilibriumKind::type1) {
    add("p1", "phi1'(x1*) = lambda", pp.phi1_prime(xt), p.lambda());
    add("p2", "phi1'(x1bar) = lambda", pp.phi1_prime(x1), p.lambda());
    add("p3", "phi2'(x2bar) = -b", pp.phi2_prime(x2), -p.b());
    add("p4", "phi1(x1bar) = phi1(x1*) - c - lambda (x1* - x1bar)", pp.phi1(x1),
        pp.phi1(xt) - p.c() - p.lambda() * (xt - x1));
    add("p5", "phi1(x2bar) = a x2bar", pp.phi1(x2), p.a() * x2);
    add("p6", "phi2(x1bar) = phi2(x1*) + d + gamma (x1* - x1bar)", pp.phi2(x1),
        pp.phi2(xt) + p.d() + p.gamma() * (xt - x1));
    add("p7", "phi2(x2bar) = -b x2bar", pp.phi2(x2), -p.b() * x2);
  } else {
    add("p1", "phi1'(x1bar) = lambda", pp.phi1_prime(x1), p.lambda());
    add("p2", "phi1(x2bar) = a x2bar", pp.phi1(x2), p.a() * x2);
    add("p3", "phi1(x1bar) = a x2bar - c - lambda (x2bar - x1bar)", pp.phi1(x1),
        p.a() * x2 - p.c() - p.lambda() * (x2 - x1));
    add("p4", "phi2'(x2bar) = -b", pp.phi2_prime(x2), -p.b());
    add("p5", "phi2(x2bar) = -b x2bar", pp.phi2(x2), -p.b() * x2);
    add("p6", "phi2(x1bar) = -b x2bar + d + gamma (x2bar - x1bar)", pp.phi2(x1),
        -p.b() * x2 + p.d() + p.gamma() * (x2 - x1));
  }
  return out;
}

std::vector<InequalityCheck> verification_inequalities(const PiecewisePayoff& pp) {
  const auto& p = pp.params();
  const double r = p.r();
  const double th = theta(p);
  const double x1 = pp.x1_bar();
  const double x2 = pp.x2_bar();
  const double one_br = 1.0 - p.b() * r;
  std::vector<InequalityCheck> out;
  auto ge0 = [&out](std::string name, double v, double scale) {
    out.push_back({std::move(name), v, ">= 0", v >= -kConditionSlack * std::max(1.0, scale)});
  };
  auto le0 = [&out](std::string name, double v, double scale) {
    out.push_back({std::move(name), v, "<= 0", v <= kConditionSlack * std::max(1.0, scale)});
  };
  auto gt0 = [&out](std::string name, double v) { out.push_back({std::move(name), v, "> 0", v > 0.0}); };
  auto lt0 = [&out](std::string name, double v) { out.push_back({std::move(name), v, "< 0", v < 0.0}); };

  // Stopping region: q - (1-br) x <= 0 for x >= x2_bar reduces to its value at x2_bar.
  ge0("stop_generator_at_x2bar", one_br * x2 - p.q(), std::abs(one_br * x2));
  // Continuation value of the stopper above its obstacle near x2_bar.
  lt0("stopper_quadratic_root_sign", one_br * (x2 - 1.0 / th) - p.q());
  gt0("stopper_gain_below_x1bar", (p.gamma() - p.b()) * (x2 - x1) + p.d());

  if (pp.kind() == EquilibriumKind::type1) {
    const double xt = pp.target();
    const double phi1_x1 = pp.phi1(x1);
    le0("intervention_generator_at_x1bar", -r * phi1_x1 + x1 - p.s(), std::abs(r * phi1_x1));
    ge0("phi1_convex_at_x1bar", pp.phi1_second(x1), 0.0);
    le0("phi1_concave_at_target", pp.phi1_second(xt), 0.0);
  } else {
    const double lw = th * (x2 - x1);  // ln w
    const double one_lr = 1.0 - p.lambda() * r;
    const double one_ar = 1.0 - p.a() * r;
    le0("intervention_generator_at_x1bar", one_ar * x2 - one_lr / th * lw + p.c() * r - p.s(),
        std::abs(one_ar * x2) + p.s());
    const double w = std::exp(lw);
    gt0("gamma_increasing_factor", one_lr * (w - w * lw - 1.0) + p.c() * r * th * w);
  }
  return out;
}

namespace {

struct PointEval {
  double x;
  double w1, w2, m, h, gamma_after_impulse, gamma_here;
  double w1pp, w2pp;
  double fd1, fd2;
  bool fd_ok;
};

constexpr double kStrictMark = std::numeric_limits<double>::denorm_min();

struct Accumulator {
  ConditionRecord rec;
  void add(double x, double violation) {
    ++rec.n_checked;
    if (violation > rec.max_violation || (rec.n_checked == 1 && violation >= rec.max_violation)) {
      rec.max_violation = violation;
      rec.argmax = x;
    }
  }
  ConditionRecord finish() {
    rec.pass = rec.max_violation <= rec.tolerance;
    return rec;
  }
};

Accumulator make_acc(std::string id, std::string region, double tol) {
  Accumulator a;
  a.rec.id = std::move(id);
  a.rec.region = std::move(region);
  a.rec.tolerance = tol;
  return a;
}

// A strict inequality `value < 0` cannot be met with tolerance; any value >= 0 is a violation.
double strict_violation(double value) { return value >= 0.0 ? std::max(value, kStrictMark) : 0.0; }

QviReport verify_impl(const PiecewisePayoff& pp, const GridSpec& grid, const VerifyTolerances& tol,
                      bool parallel) {
  if (grid.n < 100) throw GridTooCoarse("verify: grid needs at least 100 points");
  if (!(grid.lo < grid.hi)) throw std::invalid_argument("verify: grid.lo < grid.hi required");

  const auto& p = pp.params();
  const double x1 = pp.x1_bar();
  const double x2 = pp.x2_bar();
  const double gap = x2 - x1;
  const double half_var = 0.5 * p.sigma() * p.sigma();
  const double scale_x = std::max({1.0, std::abs(x1), std::abs(x2), gap});
  const double window = 1e-7 * scale_x;
  // W1 - M W1 and W2 + b x touch zero quadratically at the thresholds; strictness
  // is only resolvable in floating point some distance away.
  const double strict_window = 1e-3 * gap;
  const double fd_h = 1e-4 * std::max(1.0, gap);

  const auto n = static_cast<std::ptrdiff_t>(grid.n);
  std::vector<PointEval> pts(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double x = i == n - 1 ? grid.hi
                                : grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) /
                                                static_cast<double>(n - 1);
    PointEval& e = pts[static_cast<std::size_t>(i)];
    e.x = x;
    e.w1 = pp.w1(x);
    e.w2 = pp.w2(x);
    e.m = pp.m_op(x);
    e.h = pp.h_op(x);
    e.gamma_after_impulse = pp.gamma_fn(x + pp.delta(x));
    e.gamma_here = pp.gamma_fn(x);
    e.w1pp = pp.w1_second(x);
    e.w2pp = pp.w2_second(x);
    const double margin = 2.0 * fd_h + window;
    e.fd_ok = std::abs(x - x1) > margin && std::abs(x - x2) > margin;
    if (e.fd_ok) {
      e.fd1 = (pp.w1(x + fd_h) - 2.0 * e.w1 + pp.w1(x - fd_h)) / (fd_h * fd_h);
      e.fd2 = (pp.w2(x + fd_h) - 2.0 * e.w2 + pp.w2(x - fd_h)) / (fd_h * fd_h);
    } else {
      e.fd1 = e.fd2 = 0.0;
    }
  }

  // Suffix maxima of Gamma over the grid: sup_{y >= x} (W1(y) - lambda y).
  std::vector<double> suffix_max(pts.size());
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].gamma_here);
    suffix_max[i] = running;
  }

  auto qvi1 = make_acc("qvi1_controller_obstacle", "all", tol.analytic);
  auto qvi2 = make_acc("qvi2_stopper_obstacle", "all", tol.analytic);
  auto qvi3 = make_acc("qvi3_stopper_no_deviation", "(-inf,x1bar]", tol.analytic);
  auto qvi4 = make_acc("qvi4_terminal_payoff", "[x2bar,inf)", tol.analytic);
  auto qvi5 = make_acc("qvi5_stopper_hjb", "(x1bar,inf)", tol.analytic);
  auto qvi6 = make_acc("qvi6_controller_hjb", "(-inf,x2bar)", tol.analytic);
  auto reg1a = make_acc("region_controller_acts", "(-inf,x1bar]", tol.analytic);
  auto reg1b = make_acc("region_controller_waits", "(x1bar,inf)", 0.0);
  auto reg2a = make_acc("region_stopper_waits", "(-inf,x2bar)", 0.0);
  auto reg2b = make_acc("region_stopper_stops", "[x2bar,inf)", tol.analytic);
  auto impulse = make_acc("impulse_optimality", "all", tol.analytic);
  auto fd1 = make_acc("fd_second_derivative_w1", "open pieces", tol.fd);
  auto fd2 = make_acc("fd_second_derivative_w2", "open pieces", tol.fd);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& e = pts[i];
    const double x = e.x;
    const double sc = std::max({1.0, std::abs(e.w1), std::abs(e.w2)});
    const bool near1 = std::abs(x - x1) <= window;
    const bool near2 = std::abs(x - x2) <= window;
    const double stop_gap = e.w2 + p.b() * x;  // W2 - k

    qvi1.add(x, std::max(0.0, e.m - e.w1) / sc);
    qvi2.add(x, std::max(0.0, -stop_gap) / sc);
    if (x <= x1 && !near1) qvi3.add(x, std::abs(e.h - e.w2) / sc);
    if (x >= x2 && !near2) qvi4.add(x, std::abs(e.w1 - p.a() * x) / sc);
    if (x > x1 && !near1 && !near2) {
      const double gen2 = half_var * e.w2pp - p.r() * e.w2 + p.q() - x;
      qvi5.add(x, std::abs(std::max(gen2, -stop_gap)) / sc);
    }
    if (x < x2 && !near1 && !near2) {
      const double gen1 = half_var * e.w1pp - p.r() * e.w1 + x - p.s();
      qvi6.add(x, std::abs(std::max(gen1, e.m - e.w1)) / sc);
    }
    if (x <= x1 - window) reg1a.add(x, std::abs(e.m - e.w1) / sc);
    if (x > x1 + strict_window) reg1b.add(x, strict_violation((e.m - e.w1) / sc));
    if (x < x2 - strict_window) reg2a.add(x, strict_violation(-stop_gap / sc));
    if (x >= x2) reg2b.add(x, std::abs(stop_gap) / sc);
    impulse.add(x, std::max(0.0, suffix_max[i] - e.gamma_after_impulse) / sc);
    if (e.fd_ok) {
      fd1.add(x, std::abs(e.fd1 - e.w1pp) / std::max(1.0, std::abs(e.w1pp)));
      fd2.add(x, std::abs(e.fd2 - e.w2pp) / std::max(1.0, std::abs(e.w2pp)));
    }
  }

  QviReport rep;
  rep.grid = grid;
  for (auto* a : {&qvi1, &qvi2, &qvi3, &qvi4, &qvi5, &qvi6, &reg1a, &reg1b, &reg2a, &reg2b, &impulse,
                  &fd1, &fd2}) {
    rep.conditions.push_back(a->finish());
  }

  auto point = [&rep](std::string id, std::string where, double at, double violation, double tl) {
    ConditionRecord c;
    c.id = std::move(id);
    c.region = std::move(where);
    c.argmax = at;
    c.max_violation = violation;
    c.tolerance = tl;
    c.n_checked = 1;
    c.pass = violation <= tl;
    rep.conditions.push_back(std::move(c));
  };
  using R = Region;
  auto jump = [](double l, double r) { return std::abs(l - r) / std::max({1.0, std::abs(l), std::abs(r)}); };
  point("continuity_w1_x1bar", "x1bar", x1, jump(pp.w1_on(R::intervention, x1), pp.w1_on(R::continuation, x1)),
        tol.pasting);
  point("continuity_w1_x2bar", "x2bar", x2, jump(pp.w1_on(R::continuation, x2), pp.w1_on(R::stopping, x2)),
        tol.pasting);
  point("continuity_w2_x1bar", "x1bar", x1, jump(pp.w2_on(R::intervention, x1), pp.w2_on(R::continuation, x1)),
        tol.pasting);
  point("continuity_w2_x2bar", "x2bar", x2, jump(pp.w2_on(R::continuation, x2), pp.w2_on(R::stopping, x2)),
        tol.pasting);
  point("c1_w1_x1bar", "x1bar", x1,
        jump(pp.w1_prime_on(R::intervention, x1), pp.w1_prime_on(R::continuation, x1)), tol.derivative);
  point("c1_w2_x2bar", "x2bar", x2,
        jump(pp.w2_prime_on(R::continuation, x2), pp.w2_prime_on(R::stopping, x2)), tol.derivative);

  for (const auto& pr : pasting_report(pp)) {
    // Absolute tolerance, widened only where the terms are too large for it.
    point("pasting_" + pr.id, pr.equation, pp.x1_bar(), std::abs(pr.residual),
          std::max(tol.pasting, 1e-11 * pr.scale));
  }
  for (const auto& iq : verification_inequalities(pp)) {
    point("ineq_" + iq.name, iq.requirement, iq.value, iq.pass ? 0.0 : std::max(std::abs(iq.value), kStrictMark),
          0.0);
  }

  // Beyond the grid every piece is affine: W2 + b x grows as x -> -inf when gamma > b,
  // the controller generator -r W1 + x - s increases in x when 1 - lambda r > 0, the
  // stopper generator q - (1 - b r) x decreases when 1 - b r > 0, and M W1 - W1 = -c
  // above the target. Endpoint values on the grid then bound the tails.
  const bool tails_ok = grid.lo < x1 && grid.hi > x2 && p.gamma() > p.b() &&
                        1.0 - p.lambda() * p.r() > 0.0 && 1.0 - p.b() * p.r() > 0.0 &&
                        pp.target() < grid.hi;
  point("tails_affine", "outside grid", grid.hi, tails_ok ? 0.0 : 1.0, 0.0);

  rep.pass = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                         [](const ConditionRecord& c) { return c.pass; });
  return rep;
}

}  // namespace

QviReport verify(const PiecewisePayoff& pp, const GridSpec& grid, const VerifyTolerances& tol) {
  return verify_impl(pp, grid, tol, true);
}

QviReport verify_serial(const PiecewisePayoff& pp, const GridSpec& grid, const VerifyTolerances& tol) {
  return verify_impl(pp, grid, tol, false);
}

}  // namespace isgame
