#include "isgame/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace isgame {

Bracket Bracket::make(const ScalarFn& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw RootError(RootErrc::no_sign_change, "bracket requires lo < hi");
  }
  Bracket b{lo, hi, f(lo), f(hi)};
  if (!(b.f_lo * b.f_hi < 0.0)) {
    throw RootError(RootErrc::no_sign_change,
                    "no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return b;
}

double find_root(const ScalarFn& f, const Bracket& bracket, double tol) {
  if (!(bracket.lo < bracket.hi) || !(bracket.f_lo * bracket.f_hi < 0.0)) {
    throw RootError(RootErrc::no_sign_change, "find_root: invalid bracket");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();

  // Classic zeroin layout: b is the best estimate, c the counterpoint, a the
  // previous iterate.
  double a = bracket.lo, fa = bracket.f_lo;
  double b = bracket.hi, fb = bracket.f_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;

  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = std::max(0.5 * tol * std::max(1.0, std::abs(b)), 2.0 * eps * std::abs(b));
    const double m = 0.5 * (c - b);
    if (fb == 0.0 || std::abs(m) <= tol1) {
      return b;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (m > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw RootError(RootErrc::max_iterations, "find_root: no convergence in 200 iterations");
}

namespace {

double mesh_point(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::optional<double> refine_cell(const ScalarFn& f, const std::vector<double>& xs,
                                  const std::vector<double>& fs, std::size_t i, double tol) {
  if (fs[i] == 0.0) return xs[i];
  if (i + 1 < xs.size() && fs[i] * fs[i + 1] < 0.0) {
    return find_root(f, Bracket{xs[i], xs[i + 1], fs[i], fs[i + 1]}, tol);
  }
  return std::nullopt;
}

std::vector<double> merge_roots(const std::vector<std::optional<double>>& cells) {
  std::vector<double> roots;
  for (const auto& r : cells) {
    if (r) roots.push_back(*r);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double x : roots) {
    if (!out.empty() && std::abs(x - out.back()) < 1e-8 * std::max(1.0, std::abs(x))) continue;
    out.push_back(x);
  }
  return out;
}

void check_scan_args(double lo, double hi, int n_grid) {
  if (!(lo < hi)) throw std::invalid_argument("scan_roots: lo < hi required");
  if (n_grid < 2) throw std::invalid_argument("scan_roots: n_grid >= 2 required");
}

}  // namespace

double polish_root(const ScalarFn& f, double x, double radius) {
  const double lo = x - radius, hi = x + radius;
  const double f_lo = f(lo), f_hi = f(hi);
  if (!(f_lo * f_hi < 0.0)) return x;
  return find_root(f, Bracket{lo, hi, f_lo, f_hi}, 4.0 * std::numeric_limits<double>::epsilon());
}

std::vector<double> scan_roots_serial(const ScalarFn& f, double lo, double hi, int n_grid,
                                      double tol) {
  check_scan_args(lo, hi, n_grid);
  const auto n = static_cast<std::size_t>(n_grid);
  std::vector<double> xs(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = mesh_point(lo, hi, static_cast<int>(i), n_grid);
    fs[i] = f(xs[i]);
  }
  std::vector<std::optional<double>> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = refine_cell(f, xs, fs, i, tol);
  }
  return merge_roots(cells);
}

std::vector<double> scan_roots(const ScalarFn& f, double lo, double hi, int n_grid, double tol) {
  check_scan_args(lo, hi, n_grid);
  const auto n = static_cast<std::ptrdiff_t>(n_grid);
  std::vector<double> xs(static_cast<std::size_t>(n)), fs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    xs[k] = mesh_point(lo, hi, static_cast<int>(i), n_grid);
    fs[k] = f(xs[k]);
  }
  // Exceptions must not escape an OpenMP region; collect and rethrow after.
  std::vector<std::optional<double>> cells(static_cast<std::size_t>(n));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      cells[static_cast<std::size_t>(i)] = refine_cell(f, xs, fs, static_cast<std::size_t>(i), tol);
    } catch (...) {
#pragma omp critical(isgame_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return merge_roots(cells);
}

}  // namespace isgame
