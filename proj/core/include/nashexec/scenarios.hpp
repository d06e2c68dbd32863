#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nashexec/game.hpp"

namespace nashexec {

// The front-running experiment: investor 0 (the liquidator) must trade a
// fixed net amount while n opportunists trade zero net amounts and profit
// from the liquidator's price impact. Impact decays exponentially.
struct FrontRunningScenario {
  int opportunist_count = 0;          // n >= 0
  double liquidator_cost_coeff = 1.0;  // gamma_0 > 0
  double opportunist_cost_coeff = 1.0; // gamma_1 > 0, shared by all opportunists
  double decay_rate = 1.0;             // rho > 0
  double horizon = 1.0;                // T > 0
  double liquidator_net_amount = -1.0; // x_0 (negative = sell order)
};

// Expands the scenario to a GameSpec: investor 0 = (x_0, gamma_0) followed
// by n identical opportunists (0, gamma_1), exponential kernel.
// Throws std::invalid_argument on nonpositive cost coefficients, decay rate,
// or horizon, or negative opportunist count.
GameSpec build_scenario(const FrontRunningScenario& scenario);

// Metrics of one solved scenario.
//
// aggregate_opportunist_inventory is the opportunists' combined holdings
// X(t_k) = sum_{i>=1} integral_0^{t_k} alpha_i: zero at both ends by the
// liquidation constraints, negative while they are short. (Holdings are the
// negative of the remaining-amount curves X_i in EquilibriumSolution, whose
// sign convention counts down from the committed amount x_i = 0.)
struct ScenarioReport {
  double swept_value = 0.0;  // filled by sweep(); the varied parameter's value
  std::vector<double> costs;              // J_i per investor, liquidator first
  double liquidator_cost = 0.0;           // J_0
  double opportunist_total_cost = 0.0;    // sum of J_i, i >= 1 (<= 0: profit)
  double opportunist_each_cost = 0.0;     // J_1 (opportunists are identical)
  Eigen::VectorXd aggregate_opportunist_inventory;
  double overshoot = 0.0;                 // max_k |S(t_k) - S(0)|
  int sign_changes = 0;                   // of the aggregate opportunist rate
  double opportunist_max_pairwise_dev = 0.0;  // homogeneity check
};

// Solves the scenario's equilibrium with the requested solver and assembles
// the report. Sign changes of the aggregate opportunist rate are counted
// with a 1e-9 dead band so numerically-zero crossings are ignored.
ScenarioReport analyze_scenario(const FrontRunningScenario& scenario,
                                const Grid& grid, SolverKind solver);

enum class SweepParameter { opportunist_count, opportunist_cost_coeff, decay_rate };

// Runs analyze_scenario once per value of the varied parameter, order
// preserving; each report carries its swept value. Opportunist counts must
// be nonnegative integers. The first failing solve aborts the sweep with an
// exception identifying the offending value.
std::vector<ScenarioReport> sweep(const FrontRunningScenario& base,
                                  SweepParameter parameter,
                                  const std::vector<double>& values,
                                  const Grid& grid,
                                  SolverKind solver = SolverKind::closed_form);

}  // namespace nashexec
