#include <cmath>

#include "beurling/kernels.hpp"

namespace beurling::kernels {

std::complex<double> phase_sum_scalar(std::span<const double> logs, double t) {
  double re = 0.0;
  double im = 0.0;
  for (double l : logs) {
    const double theta = t * l;
    re += std::cos(theta);
    im -= std::sin(theta);
  }
  return {re, im};
}

std::complex<double> damped_phase_sum_scalar(std::span<const double> logs, std::span<const double> weights,
                                             double sigma, double t) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < logs.size(); ++j) {
    const double amp = weights[j] * std::exp(-sigma * logs[j]);
    const double theta = t * logs[j];
    re += amp * std::cos(theta);
    im -= amp * std::sin(theta);
  }
  return {re, im};
}

}  // namespace beurling::kernels
