#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nashexec/game.hpp"

using namespace nashexec;

namespace {

GameSpec single_investor_game(const DecayKernel& kernel, double gamma = 1.0,
                              double x = -1.0, double horizon = 1.0) {
  return GameSpec{horizon, {{x, gamma}}, kernel};
}

}  // namespace

TEST_CASE("validate accepts a well-formed game and rejects degenerate ones") {
  GameSpec game = single_investor_game(DecayKernel::exponential(0.95));
  CHECK_NOTHROW(game.validate());

  GameSpec bad = game;
  bad.horizon = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.horizon = std::nan("");
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = game;
  bad.investors.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = game;
  bad.investors[0].cost_coeff = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.investors[0].cost_coeff = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = game;
  bad.investors[0].net_amount = INFINITY;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("uniform grid carries composite trapezoidal weights") {
  const Grid grid = Grid::uniform(1.0, 5);
  CHECK(grid.size() == 5);
  CHECK(grid.is_uniform());
  CHECK(grid.horizon() == 1.0);
  CHECK(grid.nodes()(0) == 0.0);
  CHECK(grid.nodes()(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(grid.nodes()(4) == 1.0);
  CHECK(grid.weights()(0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(grid.weights()(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(grid.weights()(4) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(grid.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("chebyshev grid clusters nodes at both ends") {
  const Grid grid = Grid::chebyshev(2.0, 9);
  CHECK(grid.size() == 9);
  CHECK_FALSE(grid.is_uniform());
  CHECK(grid.nodes()(0) == 0.0);
  CHECK(grid.nodes()(8) == 2.0);
  for (int k = 1; k < 9; ++k) CHECK(grid.nodes()(k) > grid.nodes()(k - 1));
  // Extrema grid is symmetric about the midpoint.
  for (int k = 0; k < 9; ++k)
    CHECK(grid.nodes()(k) + grid.nodes()(8 - k) ==
          doctest::Approx(2.0).epsilon(1e-14));
  // Boundary spacing shrinks like 1/m^2 relative to uniform spacing.
  CHECK(grid.nodes()(1) < 2.0 / 8.0);
  CHECK(grid.weights().sum() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("from_nodes builds trapezoid weights over custom nodes") {
  const Grid grid = Grid::from_nodes({0.0, 0.1, 0.4, 1.0});
  CHECK(grid.size() == 4);
  CHECK(grid.weights()(0) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(grid.weights()(1) == doctest::Approx(0.20).epsilon(1e-15));
  CHECK(grid.weights()(2) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(grid.weights()(3) == doctest::Approx(0.30).epsilon(1e-15));

  CHECK_THROWS_AS(Grid::from_nodes({0.1, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::from_nodes({0.0, 0.5, 0.5, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Grid::from_nodes({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::uniform(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Grid::uniform(-1.0, 11), std::invalid_argument);
  CHECK_THROWS_AS(Grid::chebyshev(0.0, 11), std::invalid_argument);
}

TEST_CASE("price path reproduces the analytic response to a constant rate") {
  // One investor selling at rate -1 against G(t) = e^{-rho t}:
  // S(t) = -(1 - e^{-rho t}) / rho.
  const double rho = 0.95;
  const Grid grid = Grid::uniform(1.0, 501);
  StrategyProfile profile{grid, Eigen::MatrixXd::Constant(1, 501, -1.0)};
  const Eigen::VectorXd S =
      price_path(DecayKernel::exponential(rho), profile);

  CHECK(S(0) == 0.0);
  double max_err = 0.0;
  for (int k = 0; k < 501; ++k) {
    const double t = grid.nodes()(k);
    const double exact = -(1.0 - std::exp(-rho * t)) / rho;
    max_err = std::max(max_err, std::abs(S(k) - exact));
  }
  CHECK(max_err <= 1e-6);  // measured 1.4e-7 against the analytic curve
}

TEST_CASE("price path is antisymmetric in the strategy") {
  const Grid grid = Grid::uniform(1.0, 101);
  Eigen::MatrixXd rates(2, 101);
  for (int k = 0; k < 101; ++k) {
    const double t = grid.nodes()(k);
    rates(0, k) = -1.0 + std::sin(3.0 * t);
    rates(1, k) = 0.5 * std::cos(2.0 * t);
  }
  const DecayKernel G = DecayKernel::exponential(0.5);
  const Eigen::VectorXd S_pos = price_path(G, {grid, rates});
  const Eigen::VectorXd S_neg = price_path(G, {grid, -rates});
  CHECK((S_pos + S_neg).array().abs().maxCoeff() <= 1e-15);
  CHECK(max_deviation(S_pos) == max_deviation(S_neg));
}

TEST_CASE("constant-kernel impact cost is half the squared net amount") {
  // With permanent impact the impact part of the cost is x^2/2 for every
  // smooth strategy trading the same net amount; passing cost_coeff = 0
  // isolates that part.
  const Grid grid = Grid::uniform(1.0, 1001);
  Eigen::MatrixXd rates(1, 1001);
  for (int k = 0; k < 1001; ++k) {
    const double t = grid.nodes()(k);
    rates(0, k) = -1.0 + 0.8 * std::sin(2.0 * M_PI * t);
  }
  const double impact_part =
      execution_cost(0, {grid, rates}, DecayKernel::constant(), 0.0);
  CHECK(std::abs(impact_part - 0.5) <= 1e-5);  // measured 4e-7
}

TEST_CASE("execution cost adds the quadratic transaction-cost term") {
  const Grid grid = Grid::uniform(1.0, 201);
  StrategyProfile profile{grid, Eigen::MatrixXd::Constant(1, 201, -1.0)};
  const DecayKernel G = DecayKernel::constant();
  const double base = execution_cost(0, profile, G, 0.0);
  const double with_cost = execution_cost(0, profile, G, 2.0);
  // gamma/2 * integral of alpha^2 = 1 for alpha = -1 on [0, 1].
  CHECK(with_cost - base == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(execution_cost(1, profile, G, 1.0), std::out_of_range);
  CHECK_THROWS_AS(execution_cost(-1, profile, G, 1.0), std::out_of_range);
}

TEST_CASE("inventory path counts down from the net amount") {
  const Grid grid = Grid::uniform(2.0, 201);
  StrategyProfile profile{grid, Eigen::MatrixXd::Constant(1, 201, -0.5)};
  const Eigen::VectorXd X = inventory_path(0, profile, -1.0);
  CHECK(X(0) == -1.0);
  CHECK(X(200) == doctest::Approx(0.0).epsilon(1e-14));
  // Linear in t for a constant rate.
  CHECK(X(100) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK_THROWS_AS(inventory_path(2, profile, 0.0), std::out_of_range);
}

TEST_CASE("max deviation measures excursions from the initial price") {
  Eigen::VectorXd price(4);
  price << 0.0, 0.5, -2.0, 1.0;
  CHECK(max_deviation(price) == 2.0);
  Eigen::VectorXd shifted(3);
  shifted << 1.0, 2.0, 0.5;
  CHECK(max_deviation(shifted) == 1.0);
  CHECK_THROWS_AS(max_deviation(Eigen::VectorXd()), std::domain_error);
}
