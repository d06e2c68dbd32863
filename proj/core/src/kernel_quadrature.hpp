#pragma once

// Internal quadrature helpers shared by the price/cost functionals and the
// operator discretization. Both modules must produce the same causal matrix
// so their operator evaluations agree bit for bit; keeping the construction
// here is what guarantees that.

#include <Eigen/Dense>

#include "nashexec/game.hpp"

namespace nashexec::detail {

// Composite trapezoidal weights for strictly increasing nodes.
Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& nodes);

// Causal impact matrix C: row k holds the trapezoidal weights of
// integral_0^{t_k} G(t_k - s) ( . )(s) ds over the sub-grid t_0..t_k, so
// (C a)(k) approximates the convolution of G with a up to time t_k. Row 0 is
// zero. The diagonal entry carries half the local spacing (the s = t node is
// an endpoint of the sub-grid).
Eigen::MatrixXd causal_impact_matrix(const DecayKernel& kernel,
                                     const Grid& grid);

// Anticipation matrix D: row k discretizes integral_{t_k}^T G(s - t_k)
// ( . )(s) ds over the sub-grid t_k..t_{m-1}. Together the two matrices
// reproduce the symmetric form exactly: (C + D)[k][j] = w_j G(|t_k - t_j|).
Eigen::MatrixXd anticipation_impact_matrix(const DecayKernel& kernel,
                                           const Grid& grid);

// Cumulative trapezoidal integral of sampled values; entry k approximates
// integral_0^{t_k}, entry 0 is 0.
Eigen::VectorXd cumulative_trapezoid(const Eigen::VectorXd& values,
                                     const Eigen::VectorXd& nodes);

}  // namespace nashexec::detail
