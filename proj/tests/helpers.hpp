#pragma once

#include <cmath>
#include <stdexcept>

#include "isgame/payoffs.hpp"
#include "isgame/scenario.hpp"

namespace testing_support {

using namespace isgame;

inline GameParams params_of(const char* scenario) { return GameParams(find_scenario(scenario).params); }

/// Equilibrium of the kind the scenario is published under.
inline PiecewisePayoff published_equilibrium(const char* scenario) {
  const auto& sc = find_scenario(scenario);
  const GameParams p(sc.params);
  if (sc.expected->kind == EquilibriumKind::type1) {
    auto r = solve_type1(p);
    if (!r.equilibrium) throw std::runtime_error(std::string(scenario) + ": no Type I equilibrium");
    return PiecewisePayoff::from(*r.equilibrium, p);
  }
  auto r = solve_type2(p);
  if (!r.equilibrium) throw std::runtime_error(std::string(scenario) + ": no Type II equilibrium");
  return PiecewisePayoff::from(*r.equilibrium, p);
}

inline constexpr const char* kScenarioNames[] = {"type1-A", "type1-B", "type2-A", "type2-B"};

}  // namespace testing_support
