#include "nashexec/closed_form.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernel_quadrature.hpp"
#include "nashexec/errors.hpp"
#include "nashexec/fredholm.hpp"
#include "symmetry.hpp"

namespace nashexec {

namespace {

std::vector<double> cost_coefficients(const GameSpec& game) {
  std::vector<double> gammas;
  gammas.reserve(game.investors.size());
  for (const InvestorSpec& inv : game.investors)
    gammas.push_back(inv.cost_coeff);
  return gammas;
}

// Solves the constraint system for the closed form's initial vector z.
Eigen::VectorXd constraint_solution(const SystemMatrices& mats) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(mats.constraint);
  const double rcond = lu.rcond();
  const Eigen::VectorXd z = lu.solve(mats.constraint_rhs);
  if (!z.allFinite() || !(rcond > 1e-15)) {
    const double cond = rcond > 0.0 ? 1.0 / rcond
                                    : std::numeric_limits<double>::infinity();
    throw SolverError(
        "closed-form constraint system is numerically singular (condition "
        "estimate " + std::to_string(cond) + "); extreme parameters",
        cond);
  }
  return z;
}

}  // namespace

double dynamics_determinant(double rho, const std::vector<double>& gammas) {
  double sum = 1.0;
  double prod = 1.0;
  for (double g : gammas) {
    sum += 1.0 / (rho * g + 1.0);
    prod *= rho + 1.0 / g;
  }
  return -rho * sum * prod;
}

SystemMatrices build_system_matrices(const GameSpec& game) {
  game.validate();
  if (game.kernel.kind() != KernelKind::exponential)
    throw std::invalid_argument(
        "the closed form applies to exponential kernels only");
  const double rho = game.kernel.rho();
  if (rho <= 0.0)
    throw std::domain_error(
        "the closed form requires decay rate > 0; for permanent impact use "
        "the general solver with a constant kernel");

  const int n1 = game.investor_count();
  const int d = n1 + 1;
  const std::vector<double> gammas = cost_coefficients(game);

  SystemMatrices mats;
  mats.investor_count = n1;
  mats.horizon = game.horizon;
  mats.decay_rate = rho;

  // State ODE generator: investor rows couple each rate to the others and to
  // the price; the last row is the price dynamics dS/dt = sum(rates) - rho S.
  mats.dynamics = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n1; ++j) mats.dynamics(i, j) = -1.0 / gammas[i];
    mats.dynamics(i, i) = rho;
    mats.dynamics(i, n1) = 2.0 * rho / gammas[i];
  }
  mats.dynamics.row(n1).head(n1).setOnes();
  mats.dynamics(n1, n1) = -rho;

  mats.terminal_coupling = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n1; ++i) {
    mats.terminal_coupling(i, i) = rho * gammas[i];
    mats.terminal_coupling(i, n1) = rho;
  }
  for (int j = 0; j < n1; ++j) mats.terminal_coupling(n1, j) = gammas[j];
  mats.terminal_coupling(n1, n1) = n1;

  mats.rate_selector = Eigen::MatrixXd::Zero(n1, d);
  mats.rate_selector.leftCols(n1).setIdentity();

  mats.price_selector = Eigen::VectorXd::Zero(d);
  mats.price_selector(n1) = 1.0;

  mats.multiplier_map = Eigen::MatrixXd::Zero(n1, d);
  mats.forcing_map = Eigen::MatrixXd::Zero(n1, d);
  for (int i = 0; i < n1; ++i) {
    mats.multiplier_map(i, i) = gammas[i];
    mats.multiplier_map(i, n1) = 1.0;
    mats.forcing_map(i, i) = rho / gammas[i];
  }

  // The determinant formula guarantees invertibility for valid parameters;
  // a failed inverse would indicate broken inputs rather than a genuine
  // degeneracy.
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(mats.dynamics);
  if (!(lu.rcond() > 1e-15))
    throw SolverError("dynamics matrix is numerically singular",
                      lu.rcond() > 0.0 ? 1.0 / lu.rcond()
                                       : std::numeric_limits<double>::infinity());
  mats.dynamics_inverse = lu.inverse();

  const Eigen::MatrixXd horizon_exp =
      matrix_exponential(mats.dynamics * game.horizon);
  mats.constraint = Eigen::MatrixXd(d, d);
  mats.constraint.topRows(n1) =
      mats.rate_selector *
      ((mats.dynamics_inverse + mats.terminal_coupling * game.horizon) *
           horizon_exp -
       mats.dynamics_inverse);
  mats.constraint.row(n1) =
      mats.price_selector.transpose() *
      (Eigen::MatrixXd::Identity(d, d) + mats.terminal_coupling * horizon_exp);

  mats.constraint_rhs = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n1; ++i)
    mats.constraint_rhs(i) = game.investors[i].net_amount;

  return mats;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A) {
  if (!A.allFinite())
    throw std::invalid_argument("matrix exponential of non-finite entries");
  return A.exp();
}

EquilibriumSolution solve_equilibrium_exponential(const GameSpec& game,
                                                  const Grid& grid) {
  if (std::abs(grid.horizon() - game.horizon) > 1e-12 * game.horizon)
    throw std::invalid_argument("grid does not span the game horizon");

  const SystemMatrices mats = build_system_matrices(game);
  const int n1 = mats.investor_count;
  const int d = n1 + 1;
  const int m = grid.size();

  const Eigen::MatrixXd horizon_exp =
      matrix_exponential(mats.dynamics * mats.horizon);
  const Eigen::MatrixXd terminal_term = mats.terminal_coupling * horizon_exp;
  const Eigen::VectorXd z = constraint_solution(mats);
  const Eigen::VectorXd terminal_part = terminal_term * z;

  // State samples psi(t_k) = e^{A t_k} z + terminal_part. On uniform grids
  // one exponential per step is propagated multiplicatively and refreshed
  // from scratch every 64 steps to cap drift; non-uniform grids take a fresh
  // exponential per node.
  Eigen::MatrixXd states(d, m);
  if (grid.is_uniform()) {
    const double step = grid.nodes()(1) - grid.nodes()(0);
    const Eigen::MatrixXd step_exp = matrix_exponential(mats.dynamics * step);
    Eigen::MatrixXd current = Eigen::MatrixXd::Identity(d, d);
    for (int k = 0; k < m; ++k) {
      if (k > 0) {
        if (k % 64 == 0)
          current = matrix_exponential(mats.dynamics * grid.nodes()(k));
        else
          current = step_exp * current;
      }
      states.col(k) = current * z + terminal_part;
    }
  } else {
    for (int k = 0; k < m; ++k)
      states.col(k) =
          matrix_exponential(mats.dynamics * grid.nodes()(k)) * z +
          terminal_part;
  }

  EquilibriumSolution out{
      StrategyProfile{grid, states.topRows(n1)},
      Eigen::VectorXd(), states.row(n1).transpose(),
      Eigen::MatrixXd(n1, m), SolverKind::closed_form, 0.0};

  // Multipliers from the terminal state (exact, grid independent).
  const Eigen::VectorXd terminal_state =
      (Eigen::MatrixXd::Identity(d, d) + mats.terminal_coupling) *
      (horizon_exp * z);
  out.multipliers = mats.multiplier_map * terminal_state;

  detail::symmetrize_identical_investors(game, out.profile.rates,
                                         out.multipliers);

  for (int i = 0; i < n1; ++i)
    out.inventories.row(i) =
        inventory_path(i, out.profile, game.investors[i].net_amount)
            .transpose();

  out.residual = fredholm_residual(game, out);
  return out;
}

Eigen::VectorXd equilibrium_traded_amounts(const GameSpec& game) {
  const SystemMatrices mats = build_system_matrices(game);
  const int d = mats.investor_count + 1;
  const Eigen::MatrixXd horizon_exp =
      matrix_exponential(mats.dynamics * mats.horizon);
  const Eigen::VectorXd z = constraint_solution(mats);
  // Exact integral of the state over [0, T].
  const Eigen::VectorXd integral =
      mats.dynamics_inverse *
          ((horizon_exp - Eigen::MatrixXd::Identity(d, d)) * z) +
      mats.horizon * (mats.terminal_coupling * (horizon_exp * z));
  return mats.rate_selector * integral;
}

IdentityReport verify_matrix_identities(const SystemMatrices& mats,
                                        int ode_grid_size) {
  const int n1 = mats.investor_count;
  const int d = n1 + 1;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);

  const Eigen::MatrixXd coupling =
      mats.forcing_map.transpose() * mats.multiplier_map;
  IdentityReport report;
  report.inverse_identity_dev =
      (((mats.dynamics - coupling) *
        (mats.terminal_coupling -
         mats.price_selector * mats.price_selector.transpose()) /
        mats.decay_rate) -
       identity)
          .array()
          .abs()
          .maxCoeff();
  report.product_identity_dev =
      (coupling * (identity + mats.terminal_coupling) -
       mats.dynamics * mats.terminal_coupling)
          .array()
          .abs()
          .maxCoeff();

  // Finite-difference check of the equilibrium ODE on a fresh uniform grid.
  if (ode_grid_size < 3)
    throw std::invalid_argument("ODE residual check requires >= 3 nodes");
  const Eigen::MatrixXd horizon_exp =
      matrix_exponential(mats.dynamics * mats.horizon);
  const Eigen::VectorXd z = constraint_solution(mats);
  const Eigen::VectorXd terminal_part =
      mats.terminal_coupling * (horizon_exp * z);
  const double step = mats.horizon / (ode_grid_size - 1);
  const Eigen::MatrixXd step_exp = matrix_exponential(mats.dynamics * step);

  Eigen::MatrixXd states(d, ode_grid_size);
  Eigen::MatrixXd current = Eigen::MatrixXd::Identity(d, d);
  for (int k = 0; k < ode_grid_size; ++k) {
    if (k > 0) {
      if (k % 64 == 0)
        current = matrix_exponential(mats.dynamics * (k * step));
      else
        current = step_exp * current;
    }
    states.col(k) = current * z + terminal_part;
  }

  const Eigen::VectorXd multipliers =
      mats.multiplier_map *
      ((identity + mats.terminal_coupling) * (horizon_exp * z));
  const Eigen::VectorXd forcing = mats.forcing_map.transpose() * multipliers;

  double worst = 0.0;
  for (int k = 1; k + 1 < ode_grid_size; ++k) {
    const Eigen::VectorXd derivative =
        (states.col(k + 1) - states.col(k - 1)) / (2.0 * step);
    const Eigen::VectorXd residual =
        derivative - mats.dynamics * states.col(k) + forcing;
    worst = std::max(worst, residual.array().abs().maxCoeff());
  }
  report.ode_residual = worst;
  return report;
}

}  // namespace nashexec
