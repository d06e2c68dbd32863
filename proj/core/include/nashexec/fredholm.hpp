#pragma once

#include <Eigen/Dense>

#include "nashexec/game.hpp"

namespace nashexec {

// Grid realization of the optimality operator F acting on a strategy
// profile:
//
//   (F alpha)_i(t) = gamma_i alpha_i(t)
//                  + integral_0^t G(t-s) sum_j alpha_j(s) ds
//                  + integral_t^T G(s-t) alpha_i(s) ds.
//
// The causal matrix discretizes the first integral (trapezoid restricted to
// s <= t), the anticipation matrix the second (s >= t). The kernel value at
// s = t is shared half-and-half between the two, so causal + anticipation
// equals the symmetric matrix w_j G(|t_k - t_j|) entry for entry, and the
// causal matrix is bit-for-bit the one price_path uses.
struct DiscreteOperator {
  Grid grid;
  Eigen::VectorXd cost_coeffs;     // gamma_i
  Eigen::MatrixXd causal;          // m x m, strictly lower triangular plus diagonal
  Eigen::MatrixXd anticipation;    // m x m, upper triangular

  int investor_count() const { return static_cast<int>(cost_coeffs.size()); }

  // Applies F to sampled rates ((n+1) x m), returning (F alpha)_i(t_k).
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rates) const;

  // Dense ((n+1)m) x ((n+1)m) matrix acting on investor-major stacked rates.
  // Intended for inspection and tests; the solver assembles its augmented
  // system directly.
  Eigen::MatrixXd full_matrix() const;
};

DiscreteOperator discretize_operator(const GameSpec& game, const Grid& grid);

// General-kernel equilibrium solver. Collocates the optimality conditions
// (F alpha)_i(t_k) = eta_i at every node and appends the liquidation
// constraints sum_k w_k alpha_i(t_k) = x_i, then solves the square augmented
// system of size (n+1)(m+1) by dense LU with partial pivoting.
//
// Does not re-validate the game (callers own the gamma_i > 0 precondition);
// a degenerate game surfaces as a singular augmented system, reported as
// SolverError with a condition estimate.
EquilibriumSolution solve_equilibrium_numeric(const GameSpec& game,
                                              const Grid& grid);

// Sup-norm optimality residual max_{i,k} |(F alpha)_i(t_k) - eta_i| of any
// solution on its own grid; validates solutions from either solver.
// Throws std::invalid_argument when the solution's grid does not span the
// game's horizon.
double fredholm_residual(const GameSpec& game,
                         const EquilibriumSolution& solution);

}  // namespace nashexec
