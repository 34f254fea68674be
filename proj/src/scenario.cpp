#include "isgame/scenario.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "isgame/csv.hpp"

namespace isgame {

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> all = {
      {"type1-A",
       {0.01, 5.0, 500.0, 100.0, 20.0, 40.0, 0.0, 0.0, 1.0, 5.0},
       ExpectedThresholds{EquilibriumKind::type1, -31.11, 16.95, 34.84, 0.02}},
      {"type1-B",
       {0.01, 1.5, 50.0, 150.0, 10.0, 15.0, 2.0, 8.0, 10.0, 10.0},
       ExpectedThresholds{EquilibriumKind::type1, 4.95, 14.26, 18.18, 0.02}},
      {"type2-A",
       {0.01, 5.0, 100.0, 100.0, 25.0, 10.0, 24.0, 9.0, 45.0, 0.0},
       ExpectedThresholds{EquilibriumKind::type2, 22.56, 32.68, 32.68, 0.05}},
      {"type2-B",
       {0.01, 1.5, 150.0, 125.0, 80.0, 25.0, 70.0, 15.0, 10.0, 15.0},
       ExpectedThresholds{EquilibriumKind::type2, 14.27, 25.72, 25.72, 0.05}},
  };
  return all;
}

const Scenario& find_scenario(std::string_view name) {
  for (const auto& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("unknown scenario '" + std::string(name) +
                          "' (expected type1-A, type1-B, type2-A or type2-B)");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view v, int line) {
  T out{};
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("line " + std::to_string(line) + ": malformed number '" + std::string(v) + "'");
  }
  return out;
}

}  // namespace

Config parse_config(std::string_view text) {
  Config cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    if (double* field = param_field(cfg.params, key)) {
      *field = parse_number<double>(val, line_no);
    } else if (key == "paths") {
      cfg.paths = parse_number<long>(val, line_no);
    } else if (key == "dt") {
      cfg.dt = parse_number<double>(val, line_no);
    } else if (key == "horizon") {
      cfg.horizon = parse_number<double>(val, line_no);
    } else if (key == "seed") {
      cfg.seed = parse_number<unsigned long long>(val, line_no);
    } else if (key == "grid") {
      cfg.grid = parse_number<int>(val, line_no);
    } else if (key == "antithetic") {
      if (val == "1" || val == "true") {
        cfg.antithetic = true;
      } else if (val == "0" || val == "false") {
        cfg.antithetic = false;
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": antithetic must be true/false");
      }
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  for (auto name : kParamNames) {
    if (!seen.count(name)) throw ConfigError("missing game parameter '" + std::string(name) + "'");
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const Config& cfg) {
  std::string out;
  for (auto name : kParamNames) {
    out += std::string(name) + " = " + format_double(param_field(cfg.params, name)) + "\n";
  }
  if (cfg.paths) out += "paths = " + std::to_string(*cfg.paths) + "\n";
  if (cfg.dt) out += "dt = " + format_double(*cfg.dt) + "\n";
  if (cfg.horizon) out += "horizon = " + format_double(*cfg.horizon) + "\n";
  if (cfg.seed) out += "seed = " + std::to_string(*cfg.seed) + "\n";
  if (cfg.grid) out += "grid = " + std::to_string(*cfg.grid) + "\n";
  if (cfg.antithetic) out += std::string("antithetic = ") + (*cfg.antithetic ? "true" : "false") + "\n";
  return out;
}

}  // namespace isgame
