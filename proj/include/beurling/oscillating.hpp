#pragma once

// Oscillating prime templates
//
//   Pi_c(x) = Li(x) + sum_k R_k(x),  R_k(x) = sin(tau_k log x) on (tau_k^{1+delta_k}, tau_k^{nu_k}]
//   pi_c(x) = li(x) + sum_k sum_n mu(n)/n R_k(x^{1/n})
//
// with delta_k = (log log tau_k + a_k) / log tau_k. Block k is stored in
// log-space, so tau_k itself may be far beyond double range as long as it is
// never used as a frequency on the working range.

#include <string>
#include <vector>

#include "beurling/templates.hpp"

namespace beurling {

/// log(12 zeta(2)), the smallest a_k keeping pi_c non-decreasing.
double monotone_a_floor();

struct OscillationParams {
  std::vector<double> log_tau;  // increasing
  std::vector<double> a;
  std::vector<double> nu;  // each in (2, 3)

  std::size_t blocks() const { return log_tau.size(); }
  double tau(std::size_t k) const;
  double delta(std::size_t k) const;
  /// Block k of R_k is (exp(start), exp(end)] with these log-endpoints.
  double block_start_log(std::size_t k) const;
  double block_end_log(std::size_t k) const;

  /// tau_k = tau0^{3^k}, nu_k = 2.5, a_k = log(12 zeta(2)), each then moved to the
  /// nearest value (a_k upward, nu_k downward) at which sin(tau_k log x) vanishes
  /// on both block edges, so that the templates are continuous.
  static OscillationParams defaults(double tau0 = 50.0, std::size_t blocks = 4);

  /// Nudges a_k up and nu_k down onto zeros of the block sine where the phase
  /// is representable (tau_k nu_k log tau_k < 2^50).
  void snap_to_continuity();

  struct Validation {
    bool increasing = true;
    bool disjoint = true;    // tau_k^{nu_k} < tau_{k+1}^{1+delta_{k+1}}
    bool a_floor = true;     // a_k >= log(12 zeta(2))
    bool nu_range = true;    // nu_k in (2, 3)
    bool nonempty = true;    // 1 + delta_k < nu_k
    bool continuous = true;  // block sines vanish at both edges (within 1e-6)
    std::vector<std::string> messages;
    bool ok() const { return increasing && disjoint && a_floor && nu_range && nonempty; }
  };
  Validation validate() const;
};

/// Index k of the (k, n) block containing x, i.e. n*start_k < log x <= n*end_k,
/// or -1. O(log #blocks).
long active_block(const OscillationParams& params, double log_x, int n);

/// pi_c(x); tol is forwarded to li.
double pi_c_eval(double x, const OscillationParams& params, double tol = 1e-16);
double pi_c_density(double x, const OscillationParams& params);
/// Pi_c(x).
double Pi_c_eval(double x, const OscillationParams& params);
double Pi_c_density(double x, const OscillationParams& params);

enum class OscillationVariant { small_pi, big_pi };

class OscillatingPart final : public ContinuousPart {
 public:
  OscillatingPart(OscillationParams params, OscillationVariant variant);
  double eval(double x) const override;
  double density(double x) const override;
  double panel_width_cap(double v) const override;
  std::vector<double> log_breakpoints(double v_lo, double v_hi) const override;
  std::string id() const override;
  const OscillationParams& params() const { return params_; }
  OscillationVariant variant() const { return variant_; }

 private:
  OscillationParams params_;
  OscillationVariant variant_;
};

}  // namespace beurling
