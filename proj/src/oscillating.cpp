#include "beurling/oscillating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "beurling/special.hpp"

namespace beurling {
namespace {

constexpr double kMaxRepresentablePhase = 0x1.0p50;

// largest n with n * start_0 < log_x
int max_support_n(const OscillationParams& p, double log_x) {
  if (p.blocks() == 0) return 0;
  const double s0 = p.block_start_log(0);
  if (!(log_x > s0)) return 0;
  return static_cast<int>(std::ceil(log_x / s0)) - 1;
}

}  // namespace

double monotone_a_floor() { return std::log(12.0 * zeta_int(2)); }

double OscillationParams::tau(std::size_t k) const { return std::exp(log_tau.at(k)); }

double OscillationParams::delta(std::size_t k) const {
  const double lt = log_tau.at(k);
  return (std::log(lt) + a.at(k)) / lt;
}

double OscillationParams::block_start_log(std::size_t k) const { return (1.0 + delta(k)) * log_tau.at(k); }
double OscillationParams::block_end_log(std::size_t k) const { return nu.at(k) * log_tau.at(k); }

OscillationParams OscillationParams::defaults(double tau0, std::size_t blocks) {
  if (!(tau0 > std::exp(1.0))) throw std::invalid_argument("OscillationParams: tau0 must exceed e");
  OscillationParams p;
  double exponent = 1.0;
  for (std::size_t k = 0; k < blocks; ++k) {
    p.log_tau.push_back(exponent * std::log(tau0));
    p.a.push_back(monotone_a_floor());
    p.nu.push_back(2.5);
    exponent *= 3.0;
  }
  p.snap_to_continuity();
  return p;
}

void OscillationParams::snap_to_continuity() {
  const double pi = std::numbers::pi;
  for (std::size_t k = 0; k < blocks(); ++k) {
    const double lt = log_tau[k];
    const double t = std::exp(lt);
    if (!std::isfinite(t) || t * nu[k] * lt >= kMaxRepresentablePhase) continue;
    // start phase: tau (1 + delta) log tau = tau log tau + tau (log log tau + a)
    const double start_phase = t * lt + t * (std::log(lt) + a[k]);
    const double up = std::ceil(start_phase / pi) * pi;
    a[k] = (up - t * lt) / t - std::log(lt);
    const double end_phase = t * nu[k] * lt;
    const double down = std::floor(end_phase / pi) * pi;
    nu[k] = down / (t * lt);
  }
}

OscillationParams::Validation OscillationParams::validate() const {
  Validation v;
  if (a.size() != blocks() || nu.size() != blocks()) {
    v.increasing = false;
    v.messages.push_back("parameter vectors have different lengths");
    return v;
  }
  const double floor = monotone_a_floor();
  for (std::size_t k = 0; k < blocks(); ++k) {
    std::ostringstream tag;
    tag << "block " << k << ": ";
    if (!(log_tau[k] > 1.0)) {
      v.increasing = false;
      v.messages.push_back(tag.str() + "log tau must exceed 1");
    }
    if (k > 0 && !(log_tau[k] > log_tau[k - 1])) {
      v.increasing = false;
      v.messages.push_back(tag.str() + "tau not increasing");
    }
    if (a[k] < floor - 1e-12) {
      v.a_floor = false;
      v.messages.push_back(tag.str() + "a_k below log(12 zeta(2))");
    }
    if (!(nu[k] > 2.0 && nu[k] < 3.0)) {
      v.nu_range = false;
      v.messages.push_back(tag.str() + "nu_k outside (2, 3)");
    }
    if (!(block_start_log(k) < block_end_log(k))) {
      v.nonempty = false;
      v.messages.push_back(tag.str() + "empty block (1 + delta_k >= nu_k)");
    }
    if (k + 1 < blocks() && !(block_end_log(k) < block_start_log(k + 1))) {
      v.disjoint = false;
      v.messages.push_back(tag.str() + "overlaps the next block");
    }
    const double t = std::exp(log_tau[k]);
    if (std::isfinite(t) && t * nu[k] * log_tau[k] < kMaxRepresentablePhase) {
      const double s0 = std::sin(t * block_start_log(k));
      const double s1 = std::sin(t * block_end_log(k));
      if (std::abs(s0) > 1e-6 || std::abs(s1) > 1e-6) {
        v.continuous = false;
        v.messages.push_back(tag.str() + "block sine does not vanish at the edges (template jumps)");
      }
    }
  }
  return v;
}

long active_block(const OscillationParams& params, double log_x, int n) {
  const std::size_t K = params.blocks();
  if (K == 0 || n < 1) return -1;
  // largest k with n * start_k < log_x
  std::size_t lo = 0, hi = K;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (n * params.block_start_log(mid) < log_x) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == 0) return -1;
  const std::size_t k = lo - 1;
  return log_x <= n * params.block_end_log(k) ? static_cast<long>(k) : -1;
}

double pi_c_eval(double x, const OscillationParams& params, double tol) {
  double value = li_eval(x, tol);
  const double L = std::log(x);
  const int n_max = max_support_n(params, L);
  for (int n = 1; n <= n_max; ++n) {
    const int mu = moebius(n);
    if (mu == 0) continue;
    const long k = active_block(params, L, n);
    if (k < 0) continue;
    value += mu / static_cast<double>(n) * std::sin(params.tau(static_cast<std::size_t>(k)) / n * L);
  }
  return value;
}

double pi_c_density(double x, const OscillationParams& params) {
  double value = li_density(x);
  const double L = std::log(x);
  const int n_max = max_support_n(params, L);
  for (int n = 1; n <= n_max; ++n) {
    const int mu = moebius(n);
    if (mu == 0) continue;
    const long k = active_block(params, L, n);
    if (k < 0) continue;
    const double freq = params.tau(static_cast<std::size_t>(k)) / n;
    value += mu / static_cast<double>(n) * freq / x * std::cos(freq * L);
  }
  return value;
}

double Pi_c_eval(double x, const OscillationParams& params) {
  double value = Li_eval(x, 1e-15);
  const long k = active_block(params, std::log(x), 1);
  if (k >= 0) value += std::sin(params.tau(static_cast<std::size_t>(k)) * std::log(x));
  return value;
}

double Pi_c_density(double x, const OscillationParams& params) {
  double value = Li_density(x);
  const double L = std::log(x);
  const long k = active_block(params, L, 1);
  if (k >= 0) {
    const double t = params.tau(static_cast<std::size_t>(k));
    value += t / x * std::cos(t * L);
  }
  return value;
}

OscillatingPart::OscillatingPart(OscillationParams params, OscillationVariant variant)
    : params_(std::move(params)), variant_(variant) {
  const auto check = params_.validate();
  if (!check.ok()) {
    std::string msg = "OscillatingPart: invalid parameters";
    for (const auto& m : check.messages) msg += "; " + m;
    throw std::invalid_argument(msg);
  }
}

double OscillatingPart::eval(double x) const {
  return variant_ == OscillationVariant::small_pi ? pi_c_eval(x, params_) : Pi_c_eval(x, params_);
}

double OscillatingPart::density(double x) const {
  return variant_ == OscillationVariant::small_pi ? pi_c_density(x, params_) : Pi_c_density(x, params_);
}

double OscillatingPart::panel_width_cap(double v) const {
  double cap = 0.25;
  const int n_max = variant_ == OscillationVariant::small_pi ? max_support_n(params_, v) : 1;
  for (int n = 1; n <= n_max; ++n) {
    const long k = active_block(params_, v, n);
    if (k < 0) continue;
    cap = std::min(cap, 0.25 * n / params_.tau(static_cast<std::size_t>(k)));
  }
  return cap;
}

std::vector<double> OscillatingPart::log_breakpoints(double v_lo, double v_hi) const {
  std::vector<double> out;
  for (std::size_t k = 0; k < params_.blocks(); ++k) {
    const double s = params_.block_start_log(k);
    const double e = params_.block_end_log(k);
    if (s >= v_hi) break;
    const int n_max = variant_ == OscillationVariant::small_pi ? static_cast<int>(v_hi / s) + 1 : 1;
    for (int n = 1; n <= n_max; ++n) {
      if (variant_ == OscillationVariant::small_pi && moebius(n) == 0) continue;
      for (double edge : {n * s, n * e}) {
        if (edge > v_lo && edge < v_hi) out.push_back(edge);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string OscillatingPart::id() const {
  std::ostringstream os;
  os.precision(17);
  os << (variant_ == OscillationVariant::small_pi ? "pi_c" : "Pi_c") << "(";
  for (std::size_t k = 0; k < params_.blocks(); ++k) {
    if (k) os << ";";
    os << "logtau=" << params_.log_tau[k] << ",a=" << params_.a[k] << ",nu=" << params_.nu[k];
  }
  os << ")";
  return os.str();
}

}  // namespace beurling
