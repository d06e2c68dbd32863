#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nashexec/kernels.hpp"

namespace nashexec {

// One strategic investor: a fixed net amount to trade over the horizon
// (signed; negative = sell) and a quadratic transaction-cost coefficient.
struct InvestorSpec {
  double net_amount = 0.0;  // x_i, shares
  double cost_coeff = 0.0;  // gamma_i > 0, cost per squared trading rate
};

// The full game: n+1 investors trading over [0, horizon] against a shared
// transient-impact kernel.
struct GameSpec {
  double horizon;
  std::vector<InvestorSpec> investors;  // liquidator-first by convention
  DecayKernel kernel;

  int investor_count() const { return static_cast<int>(investors.size()); }

  // Throws std::invalid_argument unless horizon > 0, at least one investor
  // is present, and every cost coefficient is strictly positive.
  void validate() const;
};

// Time discretization of [0, T]: strictly increasing nodes t_0 = 0 < ... <
// t_{m-1} = T with trapezoidal quadrature weights (sum of weights = T).
// Uniform grids are the default; the Chebyshev-extrema grid clusters nodes
// at both endpoints and resolves the boundary layers that equilibria develop
// when transaction costs are small relative to the decay rate.
class Grid {
 public:
  static Grid uniform(double horizon, int size);
  static Grid chebyshev(double horizon, int size);

  // Builds a grid from caller-supplied nodes (first must be 0, strictly
  // increasing); weights are composite trapezoidal.
  static Grid from_nodes(std::vector<double> nodes);

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double horizon() const { return nodes_(nodes_.size() - 1); }
  bool is_uniform() const { return uniform_; }

 private:
  Grid(Eigen::VectorXd nodes, Eigen::VectorXd weights);

  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  bool uniform_;
};

// Sampled trading rates: row i holds alpha_i(t_k) (shares per unit time).
struct StrategyProfile {
  Grid grid;
  Eigen::MatrixXd rates;  // (n+1) x m

  int investor_count() const { return static_cast<int>(rates.rows()); }
};

enum class SolverKind { closed_form, fredholm };

// An equilibrium as produced by either solver: strategies, the constant
// multipliers eta_i characterizing optimality, the impact price path, the
// remaining-amount paths X_i, and provenance.
struct EquilibriumSolution {
  StrategyProfile profile;
  Eigen::VectorXd multipliers;  // eta, one per investor
  Eigen::VectorXd price;        // S(t_k), impact-only (exogenous price = 0)
  Eigen::MatrixXd inventories;  // X_i(t_k) = x_i - integral of alpha_i
  SolverKind solver = SolverKind::fredholm;
  double residual = 0.0;        // sup-norm optimality residual, see fredholm.hpp
};

// Impact price path S(t_k) of a strategy profile: causal trapezoidal
// quadrature of G(t - s) against the aggregate trading rate, S(0) = 0.
Eigen::VectorXd price_path(const DecayKernel& kernel,
                           const StrategyProfile& profile);

// Execution cost J_i: quadrature of cost_coeff/2 * alpha_i^2 + alpha_i * S
// over the grid, with S the causal impact price of the full profile. The
// investor's cost coefficient is passed explicitly, like the net amount in
// inventory_path.
double execution_cost(int investor, const StrategyProfile& profile,
                      const DecayKernel& kernel, double cost_coeff);

// Remaining net amount X_i(t_k) = x_i - cumulative trapezoidal quadrature of
// alpha_i; X_i(0) = x_i.
Eigen::VectorXd inventory_path(int investor, const StrategyProfile& profile,
                               double net_amount);

// Price-overshoot metric: max_k |S(t_k) - S(t_0)|.
double max_deviation(const Eigen::VectorXd& price);

}  // namespace nashexec
