#include "nashexec/game.hpp"

#include <cmath>
#include <stdexcept>

#include "kernel_quadrature.hpp"

namespace nashexec {

namespace detail {

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& nodes) {
  const auto m = nodes.size();
  Eigen::VectorXd w(m);
  w(0) = (nodes(1) - nodes(0)) / 2.0;
  w(m - 1) = (nodes(m - 1) - nodes(m - 2)) / 2.0;
  for (Eigen::Index k = 1; k + 1 < m; ++k)
    w(k) = (nodes(k + 1) - nodes(k - 1)) / 2.0;
  return w;
}

Eigen::MatrixXd causal_impact_matrix(const DecayKernel& kernel,
                                     const Grid& grid) {
  const Eigen::VectorXd& t = grid.nodes();
  const int m = grid.size();
  Eigen::MatrixXd causal = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k)
    for (int j = 0; j <= k; ++j) {
      // Trapezoidal weight of node j within the sub-grid t_0..t_k.
      double w;
      if (j == 0)
        w = (t(1) - t(0)) / 2.0;
      else if (j == k)
        w = (t(k) - t(k - 1)) / 2.0;
      else
        w = (t(j + 1) - t(j - 1)) / 2.0;
      causal(k, j) = w * kernel(t(k) - t(j));
    }
  return causal;
}

Eigen::MatrixXd anticipation_impact_matrix(const DecayKernel& kernel,
                                           const Grid& grid) {
  const Eigen::VectorXd& t = grid.nodes();
  const int m = grid.size();
  Eigen::MatrixXd anticipation = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k + 1 < m; ++k)
    for (int j = k; j < m; ++j) {
      // Trapezoidal weight of node j within the sub-grid t_k..t_{m-1}.
      double w;
      if (j == k)
        w = (t(k + 1) - t(k)) / 2.0;
      else if (j == m - 1)
        w = (t(m - 1) - t(m - 2)) / 2.0;
      else
        w = (t(j + 1) - t(j - 1)) / 2.0;
      anticipation(k, j) = w * kernel(t(j) - t(k));
    }
  return anticipation;
}

Eigen::VectorXd cumulative_trapezoid(const Eigen::VectorXd& values,
                                     const Eigen::VectorXd& nodes) {
  Eigen::VectorXd out(values.size());
  out(0) = 0.0;
  for (Eigen::Index k = 1; k < values.size(); ++k)
    out(k) = out(k - 1) +
             (nodes(k) - nodes(k - 1)) * (values(k) + values(k - 1)) / 2.0;
  return out;
}

}  // namespace detail

void GameSpec::validate() const {
  if (!std::isfinite(horizon) || horizon <= 0.0)
    throw std::invalid_argument("game horizon must be positive");
  if (investors.empty())
    throw std::invalid_argument("game requires at least one investor");
  for (const InvestorSpec& inv : investors) {
    if (!std::isfinite(inv.cost_coeff) || inv.cost_coeff <= 0.0)
      throw std::invalid_argument(
          "every transaction-cost coefficient must be strictly positive");
    if (!std::isfinite(inv.net_amount))
      throw std::invalid_argument("net amounts must be finite");
  }
}

Grid::Grid(Eigen::VectorXd nodes, Eigen::VectorXd weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  const auto m = nodes_.size();
  if (m < 2) throw std::invalid_argument("grid requires at least 2 nodes");
  if (nodes_(0) != 0.0)
    throw std::invalid_argument("grid must start at t = 0");
  for (Eigen::Index k = 1; k < m; ++k)
    if (!(nodes_(k) > nodes_(k - 1)))
      throw std::invalid_argument("grid nodes must be strictly increasing");
  const double T = nodes_(m - 1);
  if (!std::isfinite(T) || T <= 0.0)
    throw std::invalid_argument("grid horizon must be positive and finite");
  if (std::abs(weights_.sum() - T) > 1e-12 * T)
    throw std::invalid_argument("quadrature weights must sum to the horizon");

  const double h = nodes_(1) - nodes_(0);
  uniform_ = true;
  for (Eigen::Index k = 1; k < m; ++k)
    if (std::abs(nodes_(k) - nodes_(k - 1) - h) > 1e-12 * T) {
      uniform_ = false;
      break;
    }
}

Grid Grid::uniform(double horizon, int size) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("grid horizon must be positive and finite");
  if (size < 2) throw std::invalid_argument("grid requires at least 2 nodes");
  Eigen::VectorXd nodes(size);
  const double h = horizon / (size - 1);
  for (int k = 0; k < size; ++k) nodes(k) = k * h;
  nodes(size - 1) = horizon;
  return Grid(nodes, detail::trapezoid_weights(nodes));
}

Grid Grid::chebyshev(double horizon, int size) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("grid horizon must be positive and finite");
  if (size < 2) throw std::invalid_argument("grid requires at least 2 nodes");
  Eigen::VectorXd nodes(size);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < size; ++k)
    nodes(k) = horizon / 2.0 * (1.0 - std::cos(pi * k / (size - 1)));
  nodes(0) = 0.0;
  nodes(size - 1) = horizon;
  return Grid(nodes, detail::trapezoid_weights(nodes));
}

Grid Grid::from_nodes(std::vector<double> nodes) {
  Eigen::VectorXd n =
      Eigen::Map<const Eigen::VectorXd>(nodes.data(), nodes.size());
  return Grid(n, detail::trapezoid_weights(n));
}

Eigen::VectorXd price_path(const DecayKernel& kernel,
                           const StrategyProfile& profile) {
  if (profile.rates.cols() != profile.grid.size())
    throw std::invalid_argument("profile rates do not match the grid");
  const Eigen::VectorXd total = profile.rates.colwise().sum().transpose();
  return detail::causal_impact_matrix(kernel, profile.grid) * total;
}

double execution_cost(int investor, const StrategyProfile& profile,
                      const DecayKernel& kernel, double cost_coeff) {
  if (investor < 0 || investor >= profile.investor_count())
    throw std::out_of_range("investor index out of range");
  const Eigen::VectorXd price = price_path(kernel, profile);
  const Eigen::VectorXd& w = profile.grid.weights();
  const auto rate = profile.rates.row(investor).transpose().array();
  return (w.array() * (cost_coeff / 2.0 * rate.square() + rate * price.array()))
      .sum();
}

Eigen::VectorXd inventory_path(int investor, const StrategyProfile& profile,
                               double net_amount) {
  if (investor < 0 || investor >= profile.investor_count())
    throw std::out_of_range("investor index out of range");
  const Eigen::VectorXd traded = detail::cumulative_trapezoid(
      profile.rates.row(investor).transpose(), profile.grid.nodes());
  return Eigen::VectorXd::Constant(profile.grid.size(), net_amount) - traded;
}

double max_deviation(const Eigen::VectorXd& price) {
  if (price.size() == 0)
    throw std::domain_error("max_deviation of an empty price curve");
  return (price.array() - price(0)).abs().maxCoeff();
}

}  // namespace nashexec
