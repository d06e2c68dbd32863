#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nashexec/game.hpp"
#include "nashexec/scenarios.hpp"

namespace nashexec {

// Shortest decimal form with 17 significant digits ("%.17g"): doubles
// round-trip exactly, output is reproducible byte for byte.
std::string format_sig17(double value);

// Solution curves, one row per grid node:
//   t,alpha_0,...,alpha_n,X_0,...,X_n,S
void write_solution_csv(std::ostream& out, const EquilibriumSolution& solution);

// Sweep results, one row per swept value:
//   swept_value,J_liq,J_opp_total,J_opp_each,sigma,sign_changes
void write_sweep_csv(std::ostream& out,
                     const std::vector<ScenarioReport>& reports);

}  // namespace nashexec
