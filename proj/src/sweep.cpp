#include "isgame/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "isgame/csv.hpp"

namespace isgame {

std::vector<SweepRow> run_sweep(const ParamValues& base, std::string_view param, double from, double to,
                                int steps, const SolverOptions& opt) {
  if (std::find(std::begin(kSweepParams), std::end(kSweepParams), param) == std::end(kSweepParams)) {
    throw std::out_of_range("unknown sweep parameter '" + std::string(param) + "'");
  }
  if (steps < 1) throw std::invalid_argument("sweep needs at least one step");

  std::vector<SweepRow> rows;
  for (int i = 0; i < steps; ++i) {
    SweepRow row;
    row.param = std::string(param);
    row.value = steps == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    if (i == steps - 1 && steps > 1) row.value = to;
    ParamValues v = base;
    *param_field(v, param) = row.value;
    try {
      const GameParams p(v);
      row.params_valid = true;
      auto r1 = solve_type1(p, opt);
      auto r2 = solve_type2(p, opt);
      if (r1.equilibrium) {
        row.type1 = r1.equilibrium;
        row.type1_valid = true;
      } else if (!r1.candidates.empty()) {
        row.type1 = r1.candidates.front();
      }
      if (r2.equilibrium) {
        row.type2 = r2.equilibrium;
        row.type2_valid = true;
      } else if (!r2.candidates.empty()) {
        row.type2 = r2.candidates.front();
      }
      std::string reason;
      if (!row.type1_valid) reason += "type1: " + r1.reason;
      if (!row.type2_valid) reason += std::string(reason.empty() ? "" : "; ") + "type2: " + r2.reason;
      row.reason = reason;
    } catch (const InvalidParams& e) {
      row.reason = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv_header() {
  return "param,value,type1_valid,type1_x1_bar,type1_x1_star,type1_x2_bar,z_tilde,w_tilde,ne11,ne12,"
         "order1,second_order,type2_valid,type2_x1_bar,type2_x2_bar,w_hat,ne21,ne22,order2,reason";
}

std::string sweep_csv_row(const SweepRow& row) {
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  std::vector<std::string> f{row.param, format_double(row.value)};
  f.push_back(row.params_valid ? flag(row.type1_valid) : "");
  if (row.type1) {
    const auto& e = *row.type1;
    f.insert(f.end(), {format_double(e.thresholds.x1_bar), format_double(e.thresholds.x1_star),
                       format_double(e.thresholds.x2_bar), format_double(e.z_tilde), format_double(e.w_tilde),
                       flag(e.conditions.ne11_ok), flag(e.conditions.ne12_ok), flag(e.conditions.order_ok),
                       flag(e.conditions.second_order_ok)});
  } else {
    f.insert(f.end(), 9, "");
  }
  f.push_back(row.params_valid ? flag(row.type2_valid) : "");
  if (row.type2) {
    const auto& e = *row.type2;
    f.insert(f.end(), {format_double(e.thresholds.x1_bar), format_double(e.thresholds.x2_bar),
                       format_double(e.w_hat), flag(e.conditions.ne21_ok), flag(e.conditions.ne22_ok),
                       flag(e.conditions.order_ok)});
  } else {
    f.insert(f.end(), 6, "");
  }
  f.push_back(row.reason);
  return csv_row(f);
}

}  // namespace isgame
