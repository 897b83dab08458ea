#include <cmath>
#include <random>
#include <vector>

#include "beurling/kernels.hpp"
#include "doctest.h"

using namespace beurling;

namespace {

std::vector<double> random_logs(std::size_t n, double hi, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.0, hi);
  std::vector<double> out(n);
  for (double& l : out) l = dist(gen);
  return out;
}

}  // namespace

TEST_CASE("scalar phase sums against direct complex arithmetic") {
  const auto logs = random_logs(257, 14.0, 1);
  std::vector<double> w(logs.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = 1.0 / (1 + j % 5);
  for (double t : {0.0, 1.0, -10.0, 1000.0}) {
    std::complex<double> plain = 0.0, damped = 0.0;
    for (std::size_t j = 0; j < logs.size(); ++j) {
      plain += std::exp(std::complex<double>(0.0, -t * logs[j]));
      damped += w[j] * std::exp(-std::complex<double>(0.75, t) * logs[j]);
    }
    CHECK(std::abs(kernels::phase_sum_scalar(logs, t) - plain) < 1e-11);
    CHECK(std::abs(kernels::damped_phase_sum_scalar(logs, w, 0.75, t) - damped) < 1e-11);
  }
  CHECK(kernels::phase_sum_scalar(logs, 0.0) == std::complex<double>(257.0, 0.0));
}

#if defined(BEURLING_HAVE_AVX2_TU)
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2/FMA not supported on this CPU; vector kernels not exercised");
    return;
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 4099u}) {
    for (double hi : {1.0, 14.0, 60.0}) {
      const auto logs = random_logs(n, hi, n + 7);
      std::vector<double> w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = 1.0 / (1.0 + static_cast<double>(j % 7));
      for (double t : {0.0, 0.5, -1.0, 10.0, 1000.0, -12345.6, 1e5}) {
        for (double sigma : {0.0, 0.6, 2.0, 30.0}) {
          CAPTURE(n);
          CAPTURE(t);
          CAPTURE(sigma);
          const double scale = static_cast<double>(n) + 1.0;
          const auto a = kernels::damped_phase_sum_scalar(logs, w, sigma, t);
          const auto b = kernels::damped_phase_sum_avx2(logs, w, sigma, t);
          CHECK(std::abs(a - b) <= 2e-15 * scale * (1.0 + std::abs(t) * hi * 1e-3));
        }
        const auto a = kernels::phase_sum_scalar(logs, t);
        const auto b = kernels::phase_sum_avx2(logs, t);
        CHECK(std::abs(a - b) <= 2e-15 * (static_cast<double>(n) + 1.0) * (1.0 + std::abs(t) * hi * 1e-3));
      }
    }
  }
}

TEST_CASE("vector sin/cos at reduction boundaries") {
  if (!avx2_available()) return;
  std::vector<double> logs;
  for (int k = -64; k <= 64; ++k) {
    logs.push_back(k * M_PI / 4);
    logs.push_back(std::nextafter(k * M_PI / 4, 1e9));
  }
  for (std::size_t j = 0; j + 4 <= logs.size(); j += 4) {
    std::span<const double> four(logs.data() + j, 4);
    CHECK(std::abs(kernels::phase_sum_avx2(four, 1.0) - kernels::phase_sum_scalar(four, 1.0)) < 1e-15);
  }
}
#endif

TEST_CASE("dispatch") {
  const auto logs = random_logs(1001, 14.0, 3);
  const auto reference = kernels::phase_sum_scalar(logs, 100.0);
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(phase_sum(logs, 100.0) == reference);
  force_isa(Isa::avx2);
  CHECK(active_isa() == (avx2_available() ? Isa::avx2 : Isa::scalar));
  CHECK(std::abs(phase_sum(logs, 100.0) - reference) < 1e-11);
  // phases beyond the vector reduction range use the scalar path
  CHECK(phase_sum(logs, 1e7) == kernels::phase_sum_scalar(logs, 1e7));
  clear_forced_isa();
  CHECK(isa_name(Isa::avx2) == "avx2");
  const std::vector<double> w(2);
  CHECK_THROWS_AS(damped_phase_sum(logs, w, 1.0, 0.0), std::invalid_argument);
}
