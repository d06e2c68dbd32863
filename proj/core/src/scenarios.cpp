#include "nashexec/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kernel_quadrature.hpp"
#include "nashexec/closed_form.hpp"
#include "nashexec/errors.hpp"
#include "nashexec/fredholm.hpp"

namespace nashexec {

namespace {

// Sign changes of a sampled curve, ignoring values inside the dead band so
// numerically-zero crossings do not count.
int count_sign_changes(const Eigen::VectorXd& values, double dead_band) {
  int changes = 0;
  int last_sign = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k)) <= dead_band) continue;
    const int sign = values(k) > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace

GameSpec build_scenario(const FrontRunningScenario& scenario) {
  if (scenario.opportunist_count < 0)
    throw std::invalid_argument("opportunist count must be nonnegative");
  if (!(scenario.liquidator_cost_coeff > 0.0) ||
      !(scenario.opportunist_cost_coeff > 0.0))
    throw std::invalid_argument(
        "scenario cost coefficients must be strictly positive");
  if (!(scenario.decay_rate > 0.0))
    throw std::invalid_argument("scenario decay rate must be positive");
  if (!(scenario.horizon > 0.0))
    throw std::invalid_argument("scenario horizon must be positive");
  if (!std::isfinite(scenario.liquidator_net_amount))
    throw std::invalid_argument("liquidator net amount must be finite");

  std::vector<InvestorSpec> investors;
  investors.reserve(scenario.opportunist_count + 1);
  investors.push_back(
      {scenario.liquidator_net_amount, scenario.liquidator_cost_coeff});
  for (int i = 0; i < scenario.opportunist_count; ++i)
    investors.push_back({0.0, scenario.opportunist_cost_coeff});
  return GameSpec{scenario.horizon, std::move(investors),
                  DecayKernel::exponential(scenario.decay_rate)};
}

ScenarioReport analyze_scenario(const FrontRunningScenario& scenario,
                                const Grid& grid, SolverKind solver) {
  const GameSpec game = build_scenario(scenario);
  const EquilibriumSolution solution =
      solver == SolverKind::closed_form
          ? solve_equilibrium_exponential(game, grid)
          : solve_equilibrium_numeric(game, grid);

  const int n = scenario.opportunist_count;
  const int m = grid.size();

  // Homogeneous opportunists must come out node-wise identical (one shared
  // cost coefficient, zero net amounts); verify before aggregating them.
  double pairwise_dev = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      pairwise_dev = std::max(
          pairwise_dev,
          (solution.profile.rates.row(i) - solution.profile.rates.row(j))
              .array()
              .abs()
              .maxCoeff());
  if (pairwise_dev > 1e-9) {
    char formatted[32];
    std::snprintf(formatted, sizeof(formatted), "%.3e", pairwise_dev);
    throw SolverError(
        "opportunist strategies diverged; expected identical schedules, "
        "max pairwise deviation " +
        std::string(formatted));
  }

  ScenarioReport report;
  report.swept_value = std::numeric_limits<double>::quiet_NaN();
  report.costs.reserve(n + 1);
  for (int i = 0; i <= n; ++i)
    report.costs.push_back(execution_cost(i, solution.profile, game.kernel,
                                          game.investors[i].cost_coeff));
  report.liquidator_cost = report.costs[0];
  report.opportunist_total_cost = 0.0;
  for (int i = 1; i <= n; ++i)
    report.opportunist_total_cost += report.costs[i];
  report.opportunist_each_cost = n > 0 ? report.costs[1] : 0.0;

  // Aggregate opportunist rate and holdings. Holdings start and end flat
  // (zero net amounts); in between they track the combined front-running
  // position.
  Eigen::VectorXd aggregate_rate = Eigen::VectorXd::Zero(m);
  for (int i = 1; i <= n; ++i)
    aggregate_rate += solution.profile.rates.row(i).transpose();
  report.aggregate_opportunist_inventory =
      detail::cumulative_trapezoid(aggregate_rate, grid.nodes());
  report.sign_changes = count_sign_changes(aggregate_rate, 1e-9);
  report.overshoot = max_deviation(solution.price);
  report.opportunist_max_pairwise_dev = pairwise_dev;
  return report;
}

std::vector<ScenarioReport> sweep(const FrontRunningScenario& base,
                                  SweepParameter parameter,
                                  const std::vector<double>& values,
                                  const Grid& grid, SolverKind solver) {
  std::vector<ScenarioReport> reports;
  reports.reserve(values.size());
  for (double value : values) {
    FrontRunningScenario scenario = base;
    switch (parameter) {
      case SweepParameter::opportunist_count: {
        const double rounded = std::nearbyint(value);
        if (!(std::abs(value - rounded) <= 0.0) || rounded < 0.0)
          throw std::invalid_argument(
              "opportunist counts must be nonnegative integers; got " +
              std::to_string(value));
        scenario.opportunist_count = static_cast<int>(rounded);
        break;
      }
      case SweepParameter::opportunist_cost_coeff:
        scenario.opportunist_cost_coeff = value;
        break;
      case SweepParameter::decay_rate:
        scenario.decay_rate = value;
        break;
    }
    try {
      reports.push_back(analyze_scenario(scenario, grid, solver));
    } catch (const SolverError& err) {
      std::ostringstream msg;
      msg << "sweep aborted at value " << value << ": " << err.what();
      throw SolverError(msg.str(), err.condition_estimate);
    } catch (const std::invalid_argument& err) {
      std::ostringstream msg;
      msg << "sweep aborted at value " << value << ": " << err.what();
      throw std::invalid_argument(msg.str());
    } catch (const std::domain_error& err) {
      std::ostringstream msg;
      msg << "sweep aborted at value " << value << ": " << err.what();
      throw std::domain_error(msg.str());
    }
    reports.back().swept_value = value;
  }
  return reports;
}

}  // namespace nashexec
