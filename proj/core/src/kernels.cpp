#include "nashexec/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nashexec/errors.hpp"

namespace nashexec {

DecayKernel::DecayKernel(KernelKind kind, double param,
                         std::vector<std::pair<double, double>> samples)
    : kind_(kind), param_(param), samples_(std::move(samples)) {}

DecayKernel DecayKernel::exponential(double rho) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("exponential kernel requires decay rate >= 0");
  return DecayKernel(KernelKind::exponential, rho, {});
}

DecayKernel DecayKernel::constant() {
  return DecayKernel(KernelKind::constant, 0.0, {});
}

DecayKernel DecayKernel::power_law(double delta) {
  if (!std::isfinite(delta))
    throw std::invalid_argument("power-law kernel requires a finite exponent");
  return DecayKernel(KernelKind::power_law, delta, {});
}

DecayKernel DecayKernel::tabulated(
    std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("tabulated kernel requires at least 2 samples");
  if (samples.front().first != 0.0)
    throw std::invalid_argument("tabulated kernel samples must start at t = 0");
  for (size_t i = 0; i < samples.size(); ++i) {
    const auto& [t, v] = samples[i];
    if (!std::isfinite(t) || !std::isfinite(v))
      throw std::invalid_argument("tabulated kernel samples must be finite");
    if (v < 0.0)
      throw std::invalid_argument("tabulated kernel values must be nonnegative");
    if (i > 0 && t <= samples[i - 1].first)
      throw std::invalid_argument(
          "tabulated kernel times must be strictly increasing");
  }
  return DecayKernel(KernelKind::tabulated, 0.0, std::move(samples));
}

double DecayKernel::operator()(double t) const {
  if (std::isnan(t) || t < 0.0)
    throw std::domain_error("decay kernel is defined for t >= 0 only");
  switch (kind_) {
    case KernelKind::exponential:
      return std::exp(-param_ * t);
    case KernelKind::constant:
      return 1.0;
    case KernelKind::power_law:
      return std::pow(1.0 + t, -param_);
    case KernelKind::tabulated: {
      if (t > samples_.back().first)
        throw std::out_of_range(
            "tabulated kernel queried beyond its last sample");
      auto hi = std::lower_bound(
          samples_.begin(), samples_.end(), t,
          [](const std::pair<double, double>& s, double q) { return s.first < q; });
      if (hi == samples_.begin()) return hi->second;
      auto lo = hi - 1;
      const double span = hi->first - lo->first;
      const double frac = (t - lo->first) / span;
      return lo->second + frac * (hi->second - lo->second);
    }
  }
  throw std::logic_error("unreachable kernel kind");
}

double DecayKernel::rho() const {
  if (kind_ != KernelKind::exponential)
    throw std::logic_error("rho() is only defined for exponential kernels");
  return param_;
}

double DecayKernel::delta() const {
  if (kind_ != KernelKind::power_law)
    throw std::logic_error("delta() is only defined for power-law kernels");
  return param_;
}

const std::vector<std::pair<double, double>>& DecayKernel::samples() const {
  if (kind_ != KernelKind::tabulated)
    throw std::logic_error("samples() is only defined for tabulated kernels");
  return samples_;
}

PositiveTypeReport check_positive_type(const DecayKernel& kernel,
                                       double horizon, int grid_size,
                                       std::optional<double> tolerance) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("positive-type check requires horizon > 0");
  if (grid_size < 2)
    throw std::invalid_argument("positive-type check requires grid_size >= 2");

  const int m = grid_size;
  const double h = horizon / (m - 1);

  // All node differences are multiples of h on the uniform grid; evaluate the
  // kernel once per lag.
  Eigen::VectorXd lag_values(m);
  for (int k = 0; k < m; ++k) lag_values(k) = kernel(k * h);

  Eigen::VectorXd sqrt_w(m);
  for (int k = 0; k < m; ++k)
    sqrt_w(k) = std::sqrt((k == 0 || k == m - 1) ? h / 2.0 : h);

  Eigen::MatrixXd gram(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k <= j; ++k) {
      const double entry = sqrt_w(j) * sqrt_w(k) * lag_values(j - k);
      gram(j, k) = entry;
      gram(k, j) = entry;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolver(
      gram, Eigen::EigenvaluesOnly);
  if (eigensolver.info() != Eigen::Success)
    throw SolverError("eigensolver failed on the kernel Gram matrix");

  const double min_eig = eigensolver.eigenvalues()(0);
  const double max_eig = eigensolver.eigenvalues()(m - 1);
  const double tol = tolerance.has_value()
                         ? *tolerance
                         : std::max(1e-10 * std::max(max_eig, 0.0), 1e-12);

  PositiveTypeReport report;
  report.grid_size = m;
  report.min_eigenvalue = min_eig;
  report.tolerance = tol;
  report.is_positive_type = min_eig >= -tol;
  return report;
}

}  // namespace nashexec
