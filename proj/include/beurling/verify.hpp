#pragma once

// Empirical checks of the construction: exponential sums against their
// continuous counterparts, counting deviations, the Pi - Li gap and the
// Moebius convolution identity.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "beurling/prime_system.hpp"
#include "beurling/templates.hpp"

namespace beurling {

/// Quadrature failed to reach its tolerance; the worst panel is in u.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double lo, double hi) : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double panel_lo() const { return lo_; }
  double panel_hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// S(x, t) = sum_{p_j <= x} p_j^{-it}.
std::complex<double> exp_sum(const PrimeSystem& ps, double x, double t);

/// int_{(a, b]} u^{-it} dF_c(u), computed in v = log u on panels no wider than
/// the part's cap and 1/(4|t|), split at its breakpoints. Absolute error <= tol.
std::complex<double> exp_int_continuous(const ContinuousPart& part, double a, double b, double t, double tol);

/// S_c(x, t) = int_1^x u^{-it} dF(u): quadrature for F_c plus the exact atom sum.
std::complex<double> exp_int(const Template& tpl, double x, double t, double tol = 1e-10);

/// sqrt(x) + sqrt(x log(|t|+1) / log(x+1)).
double envelope(double x, double t);

/// Log-spaced points from lo to hi inclusive, `per_decade` per factor 10.
std::vector<double> log_grid(double lo, double hi, int per_decade);
/// {0, +-1, +-10, +-100, +-1000}.
std::vector<double> default_t_grid();

/// Least-squares slope of ln(max_ratio) against ln of the decade midpoint.
/// NaN with fewer than two usable decades.
double trend_slope(std::span<const DecadeMax> decades);
/// Maxima of `values` grouped by floor(log10 x). Decades that the range of
/// xs covers for less than `min_coverage` (in log10) are dropped, so a lone
/// endpoint at 10^d does not count as a decade.
std::vector<DecadeMax> decade_maxima(std::span<const double> xs, std::span<const double> values,
                                     double min_coverage = 0.0);
/// Coverage used by the sweep and gap reports.
inline constexpr double kMinDecadeCoverage = 0.5;

struct CountDeviation {
  double sup = 0.0;  // sup |pi(x) - F(x)| over the jump points and their left limits
  double at = 1.0;
  bool left_limit = false;
};
/// Exact sup over x in [1, x_hi]: between jumps pi - F is non-increasing, so
/// the extremes sit at jump points of pi or F_d, on either side.
CountDeviation count_deviation(const PrimeSystem& ps, const Template& tpl, double x_hi);

struct CellCheck {
  std::size_t expected = 0;  // continuous plus discrete cells below x_max
  std::size_t found = 0;
  std::size_t matched = 0;
  /// First cell (by right endpoint) left without a prime, or 0.
  double unmatched_lo = 0.0;
  double unmatched_hi = 0.0;
  bool ok() const { return expected == found && matched == expected; }
};
/// Whether the primes can be assigned one per cell of the template's
/// partitions at the system's x_max: continuous cells are (q_{j-1}, q_j],
/// discrete cells [q_{j-1}, q_j]. Greedy by right endpoint, which is exact
/// for interval matching.
CellCheck cell_containment(const PrimeSystem& ps, const Template& tpl, unsigned threads = 1);

struct DeviationRecord {
  double x;
  double t;
  double deviation;  // |S - S_c|
  double envelope;
  double ratio;
};

struct DeviationReport {
  std::vector<DeviationRecord> records;
  double max_ratio = 0.0;
  double max_ratio_x = 0.0;
  double max_ratio_t = 0.0;
  std::vector<DecadeMax> decade_max;  // over all t
  double slope = 0.0;
  CountDeviation count;
};

struct SweepOptions {
  double tol = 1e-8;
  bool include_jumps = true;  // evaluate at every prime and its left limit
  bool record_jumps = false;  // keep per-point records for jump points too
  unsigned threads = 1;
};

/// |S - S_c| / envelope over xs (sorted or not) and every prime in
/// [min xs, max xs], for each t.
DeviationReport deviation_sweep(const PrimeSystem& ps, const Template& tpl, std::span<const double> xs,
                                std::span<const double> ts, const SweepOptions& options = {});

/// Several seeds: decade maxima pooled by maximum, plus each seed's slope.
struct TrendSummary {
  std::vector<DecadeMax> pooled;
  double pooled_slope = 0.0;
  std::vector<double> per_seed_slopes;
  double max_slope = 0.05;
  std::size_t min_decades = 3;
  bool pass() const;
};
TrendSummary pool_trend(std::span<const std::vector<DecadeMax>> per_seed, double max_slope = 0.05);

struct GapReport {
  std::vector<DecadeMax> decade_max;  // of |Pi - Li| / log log x
  double slope = 0.0;
  double max_ratio = 0.0;
  double max_ratio_x = 0.0;
  /// |Pi - Li| <= D H_V + sum_{v > V} li(x^{1/v})/v, D = sup |pi - li|, V = floor(log x / log p_1).
  double worst_ceiling_excess = 0.0;  // max of |Pi - Li| - ceiling, <= 0 when the ceiling holds
  double count_deviation = 0.0;
  std::size_t points = 0;
};
/// Evaluates on a log grid in [x_lo, x_hi] and on both sides of every prime
/// power in range. Requires x_lo >= 16.
GapReport pi_Li_gap_check(const PrimeSystem& ps, double x_lo, double x_hi, int per_decade = 32);

struct MertensCheck {
  std::int64_t convolution_sum = 0;  // sum_{n_k <= x} M(x / n_k)
  bool liouville_via_mertens = false;  // L(x) = sum_{n_k^2 <= x} M(x / n_k^2)
  bool ok() const { return convolution_sum == 1 && liouville_via_mertens; }
};
/// On the k smallest primes; exhaustive, intended for k <= 8 and x <= 1e3.
MertensCheck mertens_identity_check(const PrimeSystem& ps, std::size_t k, double x);

}  // namespace beurling
