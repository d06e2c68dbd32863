#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nashexec/game.hpp"

namespace nashexec {

// Matrices of the exponential-kernel closed form. The equilibrium state
// psi(t) stacks the n+1 trading rates and the impact price; it obeys the
// linear ODE d psi/dt = A psi - B^T y with constant multipliers y recovered
// from the terminal state, which pins psi(t) = (e^{At} + K e^{AT}) z for a
// constant vector z determined by the liquidation constraints.
//
// All entries are dimensionless combinations of the decay rate and the cost
// coefficients. Sizes: d = n+2 (n+1 investors + price component).
struct SystemMatrices {
  int investor_count = 0;   // n+1
  double horizon = 0.0;     // T
  double decay_rate = 0.0;  // kernel decay rate

  Eigen::MatrixXd dynamics;           // d x d ODE generator (A above)
  Eigen::MatrixXd dynamics_inverse;   // cached A^{-1}
  Eigen::MatrixXd terminal_coupling;  // d x d terminal-state feedback (K above)
  Eigen::MatrixXd rate_selector;      // (n+1) x d, picks rates out of the state
  Eigen::VectorXd price_selector;     // d, picks the price component
  Eigen::MatrixXd multiplier_map;     // (n+1) x d, multipliers from terminal state
  Eigen::MatrixXd forcing_map;        // (n+1) x d, multipliers-to-forcing (B above)
  Eigen::MatrixXd constraint;         // d x d linear system for z
  Eigen::VectorXd constraint_rhs;     // (x_0, ..., x_n, 0)
};

// Populates the closed-form matrices for an exponential-kernel game.
// Throws std::invalid_argument for a non-exponential kernel and
// std::domain_error for decay rate <= 0 (the closed form degenerates at 0;
// permanent impact is served by the general solver with a constant kernel).
SystemMatrices build_system_matrices(const GameSpec& game);

// Closed-form determinant of the dynamics matrix:
//   -rho * (1 + sum_i 1/(rho gamma_i + 1)) * prod_i (rho + 1/gamma_i).
// Nonzero for rho > 0 and positive cost coefficients, which is what licenses
// caching the inverse.
double dynamics_determinant(double rho, const std::vector<double>& gammas);

// e^A by scaling-and-squaring with Pade approximation (backward stable).
// Throws std::invalid_argument on non-finite entries.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A);

// Exponential-kernel equilibrium in closed form: solves the constraint
// system for z, samples psi at every grid node (one matrix exponential per
// step on uniform grids, propagated and refreshed every 64 steps), splits
// the state into rates and price, recovers the multipliers from the
// terminal state, and fills inventories by quadrature. The stored residual
// is the Fredholm optimality residual of the sampled solution.
// Throws SolverError (with condition estimate) if the constraint system is
// numerically singular.
EquilibriumSolution solve_equilibrium_exponential(const GameSpec& game,
                                                  const Grid& grid);

// Net amounts each investor's closed-form strategy trades over the whole
// horizon, evaluated analytically (exact time integral of the state, no
// grid quadrature). Equals the constrained net amounts up to linear-solver
// roundoff; the gap between this and the grid quadrature of the sampled
// rates is pure trapezoid error.
Eigen::VectorXd equilibrium_traded_amounts(const GameSpec& game);

// Max-abs deviations of the two closed-form matrix identities and of the
// equilibrium ODE dynamics:
//   (a) (A - B^T C)(K - v v^T)/rho - I    (inverse identity)
//   (b) B^T C (I + K) - A K               (product identity)
//   (c) finite-difference residual of d psi/dt = A psi - B^T y on a uniform
//       grid of ode_grid_size nodes (central differences, interior nodes).
// Here C is the multiplier map and v the price selector.
struct IdentityReport {
  double inverse_identity_dev = 0.0;
  double product_identity_dev = 0.0;
  double ode_residual = 0.0;
};

IdentityReport verify_matrix_identities(const SystemMatrices& mats,
                                        int ode_grid_size = 1001);

}  // namespace nashexec
