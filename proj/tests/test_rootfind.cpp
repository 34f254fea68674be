#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "isgame/rootfind.hpp"
#include "isgame/type1.hpp"

using namespace isgame;

TEST_CASE("find_root on known roots") {
  auto f = [](double x) { return x * x - 2.0; };
  CHECK(find_root(f, Bracket::make(f, 1.0, 2.0), 1e-12) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  auto g = [](double x) { return x; };
  CHECK(std::abs(find_root(g, Bracket::make(g, -1.0, 1.0))) < 1e-10);
}

TEST_CASE("invalid brackets are reported") {
  auto f = [](double x) { return x * x + 1.0; };
  try {
    (void)Bracket::make(f, -1.0, 1.0);
    FAIL("expected RootError");
  } catch (const RootError& e) {
    CHECK(e.code() == RootErrc::no_sign_change);
  }
  CHECK_THROWS_AS((void)Bracket::make([](double x) { return x; }, 1.0, -1.0), RootError);
  Bracket bad{0.0, 1.0, 1.0, 2.0};
  CHECK_THROWS_AS((void)find_root(f, bad), RootError);
}

TEST_CASE("find_root meets its residual/width contract on random monotone functions") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0), k(0.1, 10.0);
  for (int i = 0; i < 300; ++i) {
    const double root = u(gen), slope = k(gen), curv = k(gen);
    auto f = [=](double x) { return slope * (x - root) + curv * std::pow(x - root, 3) + std::tanh(x - root); };
    const double tol = 1e-10;
    const double x = find_root(f, Bracket::make(f, root - 7.0, root + 8.0), tol);
    const bool small_residual = std::abs(f(x)) <= tol * std::max(1.0, slope);
    const bool close = std::abs(x - root) <= 2 * tol * std::max(1.0, std::abs(x));
    CHECK((small_residual || close));
  }
}

TEST_CASE("scan_roots finds every simple root") {
  auto f = [](double x) { return (x - 1.0) * (x - 3.0); };
  const auto roots = scan_roots(f, 0.0, 5.0, 100);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(scan_roots([](double x) { return x * x + 1.0; }, -3.0, 3.0, 100).empty());
}

TEST_CASE("scan_roots isolates the roots of random cubics") {
  std::mt19937_64 gen(5);
  const double lo = -10.0, hi = 10.0;
  const int n = 512;
  const double sep = (hi - lo) / n * 4.0;
  std::uniform_real_distribution<double> u(lo + 0.5, hi - 0.5), scale(0.1, 100.0);
  int tested = 0;
  while (tested < 200) {
    std::vector<double> r{u(gen), u(gen), u(gen)};
    std::sort(r.begin(), r.end());
    if (r[1] - r[0] < sep || r[2] - r[1] < sep) continue;
    ++tested;
    const double s = scale(gen) * (gen() % 2 ? 1.0 : -1.0);
    auto f = [&](double x) { return s * (x - r[0]) * (x - r[1]) * (x - r[2]); };
    const auto found = scan_roots(f, lo, hi, n);
    REQUIRE(found.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(found[i] == doctest::Approx(r[i]).epsilon(1e-9));
    CHECK(found == scan_roots_serial(f, lo, hi, n));
  }
}

TEST_CASE("scan_roots merges a root sitting on a mesh node") {
  auto f = [](double x) { return x - 2.5; };
  const auto roots = scan_roots(f, 0.0, 5.0, 3);  // nodes 0, 2.5, 5
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == 2.5);
}

TEST_CASE("the controller's fixed-cost equation has its published root") {
  // z = exp(theta (x1_star - x1_bar)) from the published Type I thresholds.
  const GameParams p = testing_support::params_of("type1-A");
  auto f = [&](double z) { return f_of_z(z, p); };
  const double z = find_root(f, Bracket::make(f, 1.0 + 1e-9, 1e6));
  CHECK(z == doctest::Approx(std::exp(theta(p) * (16.95 + 31.11))).epsilon(0.01 / 3.894));
}
