#include "nashexec/csv.hpp"

#include <cstdio>
#include <ostream>

namespace nashexec {

std::string format_sig17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_solution_csv(std::ostream& out, const EquilibriumSolution& solution) {
  const Grid& grid = solution.profile.grid;
  const Eigen::Index n1 = solution.profile.rates.rows();

  out << 't';
  for (Eigen::Index i = 0; i < n1; ++i) out << ",alpha_" << i;
  for (Eigen::Index i = 0; i < n1; ++i) out << ",X_" << i;
  out << ",S\n";

  for (int k = 0; k < grid.size(); ++k) {
    out << format_sig17(grid.nodes()(k));
    for (Eigen::Index i = 0; i < n1; ++i)
      out << ',' << format_sig17(solution.profile.rates(i, k));
    for (Eigen::Index i = 0; i < n1; ++i)
      out << ',' << format_sig17(solution.inventories(i, k));
    out << ',' << format_sig17(solution.price(k)) << '\n';
  }
}

void write_sweep_csv(std::ostream& out,
                     const std::vector<ScenarioReport>& reports) {
  out << "swept_value,J_liq,J_opp_total,J_opp_each,sigma,sign_changes\n";
  for (const ScenarioReport& report : reports) {
    out << format_sig17(report.swept_value) << ','
        << format_sig17(report.liquidator_cost) << ','
        << format_sig17(report.opportunist_total_cost) << ','
        << format_sig17(report.opportunist_each_cost) << ','
        << format_sig17(report.overshoot) << ',' << report.sign_changes
        << '\n';
  }
}

}  // namespace nashexec
