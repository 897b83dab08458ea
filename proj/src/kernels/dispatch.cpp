#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "beurling/kernels.hpp"

namespace beurling {
namespace {

// Phases beyond this lose accuracy in the three-part reduction.
constexpr double kMaxVectorPhase = 1e7;

constexpr int kNotForced = -1;
std::atomic<int> forced{kNotForced};

bool cpu_has_avx2() {
#if defined(BEURLING_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* env = std::getenv("BEURLING_FORCE_SCALAR");
  if (env && *env && *env != '0') return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

bool phases_in_range(std::span<const double> logs, double t) {
  double max_abs = 0.0;
  for (double l : logs) max_abs = std::max(max_abs, std::abs(l));
  return std::abs(t) * max_abs < kMaxVectorPhase;
}

}  // namespace

bool avx2_available() {
  static const bool available = cpu_has_avx2();
  return available;
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f != kNotForced) return static_cast<Isa>(f);
  static const Isa detected = detect();
  return detected;
}

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) return;
  forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void clear_forced_isa() { forced.store(kNotForced, std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::complex<double> phase_sum(std::span<const double> logs, double t) {
#if defined(BEURLING_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2 && phases_in_range(logs, t)) return kernels::phase_sum_avx2(logs, t);
#endif
  return kernels::phase_sum_scalar(logs, t);
}

std::complex<double> damped_phase_sum(std::span<const double> logs, std::span<const double> weights, double sigma,
                                      double t) {
  if (weights.size() != logs.size()) throw std::invalid_argument("damped_phase_sum: size mismatch");
#if defined(BEURLING_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2 && phases_in_range(logs, t))
    return kernels::damped_phase_sum_avx2(logs, weights, sigma, t);
#endif
  return kernels::damped_phase_sum_scalar(logs, weights, sigma, t);
}

}  // namespace beurling
