#pragma once

// Two-regime tail bound for sums of bounded, centred variables
//
//   P(S >= v) <= exp(-v^2 / (4 sigma^2))   if v <= u0 sigma^2
//                exp(-u0 v / 4)            otherwise,
//
// with u0 the positive root of e^u = 1 + u + u^2, and a Monte Carlo check
// of it.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace beurling {

/// Root of e^u - 1 - u - u^2 in [1, 3] by Newton safeguarded with bisection,
/// absolute error below 1e-12.
double solve_u0();

enum class TailRegime { gaussian, linear };

TailRegime tail_regime(double sigma2, double v);
double tail_bound(double sigma2, double v);

/// The variable does not satisfy |X| <= 2 and E X = 0.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bounded, mean-zero two- or three-point distributions.
struct VariableModel {
  enum class Kind { rademacher, sparse, two_point };
  Kind kind = Kind::rademacher;
  double a = 1.0;  // sparse: +-a with probability p/2 each, else 0; two_point: value a with probability p
  double p = 1.0;

  static VariableModel rademacher() { return {}; }
  static VariableModel sparse(double a, double p) { return {Kind::sparse, a, p}; }
  /// a with probability p, otherwise -p a / (1 - p).
  static VariableModel two_point(double a, double p) { return {Kind::two_point, a, p}; }

  double variance() const;
  double mean() const;
  double max_abs() const;
  std::string describe() const;
  /// Throws ModelError unless |X| <= 2, mean 0 and probabilities valid.
  void validate() const;
};

struct KolmogorovReport {
  std::size_t terms = 0;
  double sigma2 = 0.0;
  double v = 0.0;
  TailRegime regime = TailRegime::gaussian;
  double bound = 1.0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double empirical = 0.0;
  double radius = 0.0;  // empirical minus the one-sided 99% Wilson lower limit
  bool pass() const { return empirical - radius <= bound; }
};

inline constexpr double kWilsonZ99 = 2.3263478740408408;  // one-sided 99% normal quantile

/// Lower end of the one-sided Wilson score interval.
double wilson_lower(std::size_t hits, std::size_t trials, double z = kWilsonZ99);

/// Empirical P(S >= v) for S a sum of `terms` independent copies of the model.
KolmogorovReport kolmogorov_check(const VariableModel& model, std::size_t terms, double v, std::size_t trials,
                                  std::uint64_t seed, unsigned threads = 1);

}  // namespace beurling
