#include "nashexec/fredholm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernel_quadrature.hpp"
#include "nashexec/errors.hpp"
#include "symmetry.hpp"

namespace nashexec {

namespace {

void require_grid_spans_horizon(const GameSpec& game, const Grid& grid) {
  if (std::abs(grid.horizon() - game.horizon) > 1e-12 * game.horizon)
    throw std::invalid_argument("grid does not span the game horizon");
}

}  // namespace

Eigen::MatrixXd DiscreteOperator::apply(const Eigen::MatrixXd& rates) const {
  const int n1 = investor_count();
  const int m = grid.size();
  if (rates.rows() != n1 || rates.cols() != m)
    throw std::invalid_argument("rate matrix does not match the operator");
  const Eigen::VectorXd cross = causal * rates.colwise().sum().transpose();
  Eigen::MatrixXd out(n1, m);
  for (int i = 0; i < n1; ++i)
    out.row(i) = cost_coeffs(i) * rates.row(i) + cross.transpose() +
                 (anticipation * rates.row(i).transpose()).transpose();
  return out;
}

Eigen::MatrixXd DiscreteOperator::full_matrix() const {
  const int n1 = investor_count();
  const int m = grid.size();
  Eigen::MatrixXd full(n1 * m, n1 * m);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      auto block = full.block(i * m, j * m, m, m);
      block = causal;
      if (i == j) {
        block += anticipation;
        block.diagonal().array() += cost_coeffs(i);
      }
    }
  return full;
}

DiscreteOperator discretize_operator(const GameSpec& game, const Grid& grid) {
  require_grid_spans_horizon(game, grid);
  Eigen::VectorXd gammas(game.investor_count());
  for (int i = 0; i < game.investor_count(); ++i)
    gammas(i) = game.investors[i].cost_coeff;
  return DiscreteOperator{
      grid, std::move(gammas),
      detail::causal_impact_matrix(game.kernel, grid),
      detail::anticipation_impact_matrix(game.kernel, grid)};
}

EquilibriumSolution solve_equilibrium_numeric(const GameSpec& game,
                                              const Grid& grid) {
  require_grid_spans_horizon(game, grid);
  const int n1 = game.investor_count();
  const int m = grid.size();
  const Eigen::Index size = static_cast<Eigen::Index>(n1) * (m + 1);

  const DiscreteOperator op = discretize_operator(game, grid);

  // Unknowns: rates investor-major, then the n+1 multipliers. Rows: the
  // collocated optimality conditions (F alpha)_i(t_k) - eta_i = 0, then the
  // liquidation constraints.
  Eigen::MatrixXd system(size, size);
  system.setZero();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  const Eigen::Index eta_base = static_cast<Eigen::Index>(n1) * m;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n1; ++j) {
      auto block = system.block(static_cast<Eigen::Index>(i) * m,
                                static_cast<Eigen::Index>(j) * m, m, m);
      block = op.causal;
      if (i == j) {
        block += op.anticipation;
        block.diagonal().array() += op.cost_coeffs(i);
      }
    }
    system.block(static_cast<Eigen::Index>(i) * m, eta_base + i, m, 1)
        .setConstant(-1.0);
    system.block(eta_base + i, static_cast<Eigen::Index>(i) * m, 1, m) =
        grid.weights().transpose();
    rhs(eta_base + i) = game.investors[i].net_amount;
  }

  // In-place LU: the augmented matrix is the dominant allocation at large
  // n and m, so it doubles as factorization storage.
  Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(system);
  const double rcond = lu.rcond();
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite() || !(rcond > 1e-14)) {
    const double cond = rcond > 0.0 ? 1.0 / rcond
                                    : std::numeric_limits<double>::infinity();
    throw SolverError(
        "augmented equilibrium system is singular or near-singular "
        "(condition estimate " + std::to_string(cond) +
        "); expected when the kernel is not of positive type or some "
        "cost coefficient is not strictly positive",
        cond);
  }

  EquilibriumSolution out{
      StrategyProfile{grid, Eigen::MatrixXd(n1, m)},
      sol.tail(n1), Eigen::VectorXd(), Eigen::MatrixXd(n1, m),
      SolverKind::fredholm, 0.0};
  for (int i = 0; i < n1; ++i)
    out.profile.rates.row(i) =
        sol.segment(static_cast<Eigen::Index>(i) * m, m).transpose();
  detail::symmetrize_identical_investors(game, out.profile.rates,
                                         out.multipliers);
  out.price = op.causal * out.profile.rates.colwise().sum().transpose();
  for (int i = 0; i < n1; ++i)
    out.inventories.row(i) =
        inventory_path(i, out.profile, game.investors[i].net_amount)
            .transpose();
  const Eigen::MatrixXd fa = op.apply(out.profile.rates);
  out.residual =
      (fa.colwise() - out.multipliers).array().abs().maxCoeff();
  return out;
}

double fredholm_residual(const GameSpec& game,
                         const EquilibriumSolution& solution) {
  require_grid_spans_horizon(game, solution.profile.grid);
  if (solution.profile.investor_count() != game.investor_count())
    throw std::invalid_argument("solution does not match the game");
  const DiscreteOperator op = discretize_operator(game, solution.profile.grid);
  const Eigen::MatrixXd fa = op.apply(solution.profile.rates);
  return (fa.colwise() - solution.multipliers).array().abs().maxCoeff();
}

}  // namespace nashexec
