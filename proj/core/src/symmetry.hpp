#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nashexec/game.hpp"

namespace nashexec::detail {

// The equilibrium is unique, so investors specified identically (net amount
// and cost coefficient equal as exact doubles) play identical strategies.
// Floating-point linear algebra does not commute with index permutations —
// matrix exponentials and pivoted factorizations leave each group's rows
// differing by amplified roundoff — so solvers restore the exact structure
// afterwards: averaging a group's rows projects the computed solution onto
// the symmetric subspace containing the true one, cancelling the
// permutation-asymmetric part of the error.
inline void symmetrize_identical_investors(const GameSpec& game,
                                           Eigen::MatrixXd& rates,
                                           Eigen::VectorXd& multipliers) {
  const int count = game.investor_count();
  std::vector<bool> grouped(count, false);
  for (int i = 0; i < count; ++i) {
    if (grouped[i]) continue;
    std::vector<int> members{i};
    for (int j = i + 1; j < count; ++j) {
      if (!grouped[j] &&
          game.investors[j].net_amount == game.investors[i].net_amount &&
          game.investors[j].cost_coeff == game.investors[i].cost_coeff) {
        members.push_back(j);
        grouped[j] = true;
      }
    }
    if (members.size() < 2) continue;

    Eigen::RowVectorXd mean_rates = Eigen::RowVectorXd::Zero(rates.cols());
    double mean_multiplier = 0.0;
    for (int member : members) {
      mean_rates += rates.row(member);
      mean_multiplier += multipliers(member);
    }
    mean_rates /= static_cast<double>(members.size());
    mean_multiplier /= static_cast<double>(members.size());
    for (int member : members) {
      rates.row(member) = mean_rates;
      multipliers(member) = mean_multiplier;
    }
  }
}

}  // namespace nashexec::detail
