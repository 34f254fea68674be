#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isgame/model.hpp"
#include "isgame/type1.hpp"
#include "isgame/type2.hpp"

namespace isgame {

/// Parameter names a sweep may vary.
inline constexpr std::string_view kSweepParams[] = {"c", "d", "lambda", "gamma", "a",
                                                    "b", "s", "q",      "r",     "sigma"};

struct SweepRow {
  std::string param;
  double value = 0.0;
  bool params_valid = false;
  // Smallest-w Type I candidate (the equilibrium when it passes every condition).
  std::optional<Type1Equilibrium> type1;
  bool type1_valid = false;
  std::optional<Type2Equilibrium> type2;
  bool type2_valid = false;
  std::string reason;  // empty when both types validate
};

/// Re-solves both equilibrium types at `steps` evenly spaced values of
/// `param` from `from` to `to` inclusive. Inadmissible parameter sets give
/// rows with params_valid = false and the constraint in `reason`. Throws
/// std::out_of_range for a name outside kSweepParams and
/// std::invalid_argument when steps < 1.
std::vector<SweepRow> run_sweep(const ParamValues& base, std::string_view param, double from, double to,
                                int steps, const SolverOptions& opt = {});

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace isgame
