#pragma once

// Phase sums over log-positions, the inner loops of the exponential sums and
// of the truncated Dirichlet series:
//
//   phase_sum(l, t)                 = sum_j exp(-i t l_j)
//   damped_phase_sum(l, w, sigma, t) = sum_j w_j exp(-(sigma + i t) l_j)
//
// A scalar reference and an AVX2+FMA variant, chosen at runtime.

#include <complex>
#include <span>
#include <string_view>

namespace beurling {

enum class Isa { scalar, avx2 };

namespace kernels {

std::complex<double> phase_sum_scalar(std::span<const double> logs, double t);
std::complex<double> damped_phase_sum_scalar(std::span<const double> logs, std::span<const double> weights,
                                             double sigma, double t);

#if defined(BEURLING_HAVE_AVX2_TU)
std::complex<double> phase_sum_avx2(std::span<const double> logs, double t);
std::complex<double> damped_phase_sum_avx2(std::span<const double> logs, std::span<const double> weights,
                                           double sigma, double t);
#endif

}  // namespace kernels

/// True when the AVX2 variant is compiled in and the CPU supports AVX2 and FMA.
bool avx2_available();
/// ISA used by the dispatching entry points. BEURLING_FORCE_SCALAR=1 in the
/// environment selects the scalar reference.
Isa active_isa();
/// Overrides the runtime choice; passing avx2 where unavailable is ignored.
void force_isa(Isa isa);
void clear_forced_isa();
std::string_view isa_name(Isa isa);

std::complex<double> phase_sum(std::span<const double> logs, double t);
/// Requires weights.size() == logs.size().
std::complex<double> damped_phase_sum(std::span<const double> logs, std::span<const double> weights, double sigma,
                                      double t);

}  // namespace beurling
