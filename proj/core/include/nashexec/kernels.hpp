#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace nashexec {

enum class KernelKind { exponential, constant, power_law, tabulated };

// Decay kernel G: [0, inf) -> [0, inf). G(t) is the residual price impact of
// a unit trading rate after elapsed time t; decaying kernels model transient
// impact, the constant kernel models permanent impact. Immutable value type,
// safe to share across threads.
class DecayKernel {
 public:
  // G(t) = exp(-rho * t). rho >= 0; rho = 0 coincides with constant().
  static DecayKernel exponential(double rho);

  // G(t) = 1 (permanent impact).
  static DecayKernel constant();

  // G(t) = (1 + t)^(-delta).
  static DecayKernel power_law(double delta);

  // Piecewise-linear interpolation of (time, value) samples, e.g. a measured
  // impact curve. Times must be strictly increasing and start at 0; values
  // must be finite and nonnegative. Evaluation beyond the last sample throws.
  static DecayKernel tabulated(std::vector<std::pair<double, double>> samples);

  // Evaluates G(t). Throws std::domain_error for t < 0 and
  // std::out_of_range when a tabulated kernel is queried past its samples.
  double operator()(double t) const;

  KernelKind kind() const { return kind_; }

  // Parameter accessors; each throws std::logic_error when the kernel is of
  // a different kind.
  double rho() const;
  double delta() const;
  const std::vector<std::pair<double, double>>& samples() const;

 private:
  DecayKernel(KernelKind kind, double param,
              std::vector<std::pair<double, double>> samples);

  KernelKind kind_;
  double param_;  // rho for exponential, delta for power_law
  std::vector<std::pair<double, double>> samples_;
};

// Result of the numerical positive-type test.
struct PositiveTypeReport {
  int grid_size = 0;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;       // negative-eigenvalue slack actually applied
  bool is_positive_type = false;
};

// Tests the positive-type condition on [0, horizon]: builds the symmetric
// Gram matrix K[j][k] = sqrt(w_j w_k) G(|t_j - t_k|) over a uniform grid
// with trapezoidal weights and reports its smallest eigenvalue. A true
// verdict certifies nonnegativity of the kernel's quadratic form for every
// strategy representable on the grid; a strictly negative minimum eigenvalue
// exhibits a grid strategy with negative impact cost (price manipulation).
//
// When no tolerance is given, the verdict allows the floating-point slack
// max(1e-10 * max_eigenvalue, 1e-12): eigenvalues of genuinely positive
// semidefinite matrices dip slightly negative in finite precision.
PositiveTypeReport check_positive_type(
    const DecayKernel& kernel, double horizon, int grid_size,
    std::optional<double> tolerance = std::nullopt);

}  // namespace nashexec
