#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace isgame {

using ScalarFn = std::function<double(double)>;

enum class RootErrc {
  no_sign_change,
  max_iterations,
  not_bracketed,
  empty_root_set,
};

class RootError : public std::runtime_error {
 public:
  RootError(RootErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  RootErrc code() const noexcept { return code_; }

 private:
  RootErrc code_;
};

/// An interval [lo, hi] whose endpoint values have opposite signs.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  /// Evaluates f at both ends; throws RootError(no_sign_change) unless
  /// lo < hi and f(lo)*f(hi) < 0.
  static Bracket make(const ScalarFn& f, double lo, double hi);
};

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr int kDefaultScanGrid = 4096;
inline constexpr int kMaxRootIterations = 200;

/// Brent's method (bisection with inverse-quadratic / secant steps).
///
/// Returns x with f(x) == 0 or a final bracket no wider than
/// tol*max(1,|x|). Throws RootError(no_sign_change) on an invalid bracket
/// and RootError(max_iterations) after 200 iterations.
double find_root(const ScalarFn& f, const Bracket& bracket, double tol = kDefaultRootTol);

/// Refines a root located to within `radius` down to machine precision.
/// Returns x unchanged when [x - radius, x + radius] does not bracket a sign
/// change.
double polish_root(const ScalarFn& f, double x, double radius);

/// All sign-change roots of f on [lo, hi] located on an n_grid-point uniform
/// mesh, refined with find_root, sorted ascending and de-duplicated (roots
/// closer than 1e-8*max(1,|root|) are merged). Mesh evaluation and cell
/// refinement run under OpenMP; the result equals scan_roots_serial.
/// f must be safe to call concurrently.
std::vector<double> scan_roots(const ScalarFn& f, double lo, double hi,
                               int n_grid = kDefaultScanGrid, double tol = kDefaultRootTol);

/// Single-threaded reference for scan_roots.
std::vector<double> scan_roots_serial(const ScalarFn& f, double lo, double hi,
                                      int n_grid = kDefaultScanGrid,
                                      double tol = kDefaultRootTol);

}  // namespace isgame
