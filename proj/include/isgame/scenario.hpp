#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isgame/model.hpp"
#include "isgame/payoffs.hpp"

namespace isgame {

/// Published thresholds for a built-in parameter row.
struct ExpectedThresholds {
  EquilibriumKind kind;
  double x1_bar;
  double target;  // x1_star for Type I, x2_bar for Type II
  double x2_bar;
  double tolerance;
};

struct Scenario {
  std::string name;
  ParamValues params;
  std::optional<ExpectedThresholds> expected;
};

/// type1-A, type1-B, type2-A, type2-B.
const std::vector<Scenario>& builtin_scenarios();
/// Throws std::out_of_range for an unknown name.
const Scenario& find_scenario(std::string_view name);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of a flat key=value config file. Game parameters are required;
/// the run settings are optional and fall back to command defaults.
struct Config {
  ParamValues params;
  std::optional<long> paths;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<unsigned long long> seed;
  std::optional<int> grid;
  std::optional<bool> antithetic;
};

/// One `key = value` pair per line, `#` starts a comment. Throws
/// ConfigError naming the line on unknown keys, duplicate keys, malformed
/// numbers or missing game parameters.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);
/// Inverse of parse_config; numbers are written with round-trip precision.
std::string dump_config(const Config& cfg);

}  // namespace isgame
