#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <tuple>

#include "beurling/discretizer.hpp"
#include "beurling/numsys.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beurling;

TEST_CASE("prime counting") {
  const auto ps = PrimeSystem::finite({2.5, 3.0, 7.25, 11.0});
  CHECK(pi_count(ps, 2.0) == 0);
  CHECK(pi_count(ps, 2.5) == 1);
  CHECK(pi_count(ps, 7.25) == 3);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> dist(1.0, 15.0);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(gen);
    std::size_t scan = 0;
    for (double p : ps.primes()) scan += p <= x;
    CHECK(pi_count(ps, x) == scan);
  }
}

TEST_CASE("Riemann prime counting") {
  const auto two = PrimeSystem::finite({2.0});
  CHECK(riemann_pi(two, 8.0) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  CHECK(riemann_pi(two, 1.5) == 0.0);
  const auto ps = PrimeSystem::finite({2.0, 3.0, 5.0, 7.0});
  CHECK(riemann_pi(ps, 3.5) == 2.0);
  CHECK(riemann_pi(ps, 27.0) == doctest::Approx(4 + 3 / 2.0 + 1 / 3.0 + 1 / 4.0 + 2 / 3.0 * 0 + 1 / 3.0 + 1 / 4.0 * 0).epsilon(1e-15));
}

TEST_CASE("generated integers") {
  auto values = [](const std::vector<GenInteger>& v) {
    std::vector<double> out;
    for (const auto& g : v) out.push_back(static_cast<double>(g.value));
    return out;
  };
  CHECK(values(generate_integers(PrimeSystem::finite({2.0, 3.0}), 10.0)) == std::vector<double>{1, 2, 3, 4, 6, 8, 9});
  CHECK(values(generate_integers(PrimeSystem::finite({2.0}), 10.0)) == std::vector<double>{1, 2, 4, 8});
  // repeated primes are distinct generators
  CHECK(generate_integers(PrimeSystem::finite({2.0, 2.0}), 4.0).size() == 6);
  CHECK(generate_integers(PrimeSystem::finite({2.0}), 0.5).empty());
}

TEST_CASE("enumeration equals exhaustive exponent loops") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> logp(std::log(1.05), std::log(40.0));
  std::uniform_real_distribution<double> logx(0.0, std::log(1e3));
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> primes(count(gen));
    for (double& p : primes) p = trial % 3 == 0 ? std::round(std::exp(logp(gen))) + 1.0 : std::exp(logp(gen));
    const auto ps = PrimeSystem::finite(primes);
    std::vector<double> sorted(ps.primes().begin(), ps.primes().end());
    const double x = std::exp(logx(gen));
    const auto expected = oracle::exponent_loops(sorted, x);
    IntegerStream stream(ps, x);
    GenInteger g;
    std::size_t i = 0;
    for (; stream.next(g); ++i) {
      REQUIRE(i < expected.size());
      CHECK(g.value == expected[i].value);
      CHECK(stream.factor_indices() == expected[i].indices);
      CHECK(g.omega == expected[i].omega);
      CHECK(g.squarefree == expected[i].squarefree);
      CHECK(std::abs(g.log_value - std::log(static_cast<double>(g.value))) < 1e-12 * (1 + g.log_value));
    }
    CHECK(i == expected.size());
  }
}

TEST_CASE("N, M, L") {
  const auto ps = PrimeSystem::finite({2.0, 3.0});
  CHECK(N_count(ps, 10.0) == 7);
  CHECK(M_sum(ps, 10.0) == 0);
  CHECK(L_sum(ps, 10.0) == 1);
  CHECK(N_count(ps, 1.5) == 1);
  CHECK(M_sum(ps, 1.5) == 1);
  CHECK(L_sum(ps, 1.5) == 1);

  const CountingCache cache(ps);
  for (double x : {1.0, 2.0, 9.5, 10.0, 37.0, 5000.0, 12.0}) {
    CHECK(cache.N(x) == N_count(ps, x));
    CHECK(cache.M(x) == M_sum(ps, x));
    CHECK(cache.L(x) == L_sum(ps, x));
  }
}

TEST_CASE("Moebius sums invert the integer count") {
  const auto ps = PrimeSystem::finite({1.3, 2.0, 2.7, 5.5});
  const CountingCache cache(ps);
  for (double x = 1.0; x < 300.0; x *= 1.37) {
    std::int64_t total = 0;
    for (long double n : cache.values_upto(x)) total += cache.M(static_cast<double>(x / n));
    CHECK(total == 1);
    CHECK(N_count(ps, x) >= static_cast<std::int64_t>(pi_count(ps, x)) + 1);
  }
}

TEST_CASE("range errors beyond the cutoff") {
  SystemMeta meta;
  meta.x_max = 100.0;
  const PrimeSystem ps({2.0, 3.0, 5.0}, meta);
  CHECK_THROWS_AS(pi_count(ps, 101.0), std::out_of_range);
  CHECK_THROWS_AS(riemann_pi(ps, 101.0), std::out_of_range);
  CHECK_THROWS_AS(N_count(ps, 1000.0), std::out_of_range);
  CHECK_THROWS_AS(PrimeSystem({200.0}, meta), std::invalid_argument);
}

TEST_CASE("Euler product and Dirichlet series") {
  const auto two = PrimeSystem::finite({2.0});
  const auto e = zeta_euler(two, 2.0);
  CHECK(std::abs(e.value - 4.0 / 3.0) < 1e-12);
  CHECK(e.tail_bound == 0.0);

  const auto ps = PrimeSystem::finite({2.0, 3.0});
  const auto eu = zeta_euler(ps, 2.0);
  CHECK(std::abs(eu.value - 4.0 / 3.0 * 9.0 / 8.0) < 1e-12);
  const auto di = zeta_dirichlet(ps, 2.0, 1e3);
  CHECK(di.certified());
  CHECK(std::abs(eu.value - di.value) <= eu.tail_bound + di.tail_bound);
  CHECK(std::abs(eu.value - di.value) > 0.0);

  const auto complex_s = std::complex<double>(2.0, 3.0);
  const auto ec = zeta_euler(ps, complex_s);
  const auto dc = zeta_dirichlet(ps, complex_s, 1e4);
  CHECK(std::abs(ec.value - dc.value) <= ec.tail_bound + dc.tail_bound);

  CHECK(std::isinf(zeta_euler(discretize(Template::continuous(std::make_shared<SmallLiPart>()), 1, 1e3), 1.0).tail_bound));
  CHECK_THROWS_AS(zeta_dirichlet(ps, 2.0), std::invalid_argument);
}

TEST_CASE("zeta of a discretized li system") {
  const auto ps = discretize(Template::continuous(std::make_shared<SmallLiPart>()), 42, 1e4);
  const auto e = zeta_euler(ps, 2.0);
  const auto d = zeta_dirichlet(ps, 2.0);
  CHECK(e.certified());
  CHECK(d.certified());
  CHECK(std::abs(e.value - d.value) <= e.tail_bound + d.tail_bound);
}

TEST_CASE("the log-integral difference against exponential integrals") {
  // int_0^L (e^{-av} - e^{-bv})/v dv = Ein(bL) - Ein(aL), Ein(z) = E1(z) + log z + gamma for z > 0
  constexpr double gamma = 0.57721566490153286061;
  auto ein = [&](double z) {
    if (z == 0.0) return 0.0;
    if (z > 0) return -std::expint(-z) + std::log(z) + gamma;
    return -(std::expint(-z) - std::log(-z) - gamma);
  };
  for (double s : {0.6, 0.9, 1.0, 1.5, 3.0}) {
    for (double L : {0.3, 4.0, 13.8}) {
      const auto value = log_integral_difference(s - 1.0, s, L);
      CHECK(value.real() == doctest::Approx(ein(s * L) - ein((s - 1.0) * L)).epsilon(1e-12));
      CHECK(std::abs(value.imag()) < 1e-15);
    }
  }
}

TEST_CASE("Z(s)") {
  const auto ps = discretize(Template::continuous(std::make_shared<SmallLiPart>()), 42, 1e5);
  // Z(s) -> 0 as s grows: the jump sum decays like p_1^{-s}, the Li part like 1/s
  double prev = 1.0;
  for (double s : {40.0, 400.0, 4000.0}) {
    const double z = std::abs(Z_eval(ps, s).value);
    CHECK(z < 1.1 / s);
    CHECK(z < prev);
    prev = z;
  }
  const auto z2 = Z_eval(ps, 2.0);
  const auto e2 = zeta_euler(ps, 2.0);
  const double direct = std::log(e2.value.real()) - std::log(2.0);
  // difference: Euler factors with p^v > X and the Li tail beyond X
  CHECK(std::abs(z2.value - direct) <= e2.tail_bound / e2.value.real() + z2.li_tail + 2.0 / 1e5);
  CHECK_THROWS_AS(Z_eval(ps, 0.5), std::domain_error);
  const auto zc = Z_eval(ps, {0.75, 100.0});
  CHECK(std::isfinite(std::abs(zc.value)));
  CHECK(std::isinf(zc.li_tail));
  CHECK(std::abs(Z_eval(ps, {0.75, -100.0}).value - std::conj(zc.value)) < 1e-9);
}

TEST_CASE("density estimate") {
  const auto ps = PrimeSystem::finite({2.0, 3.0});
  const auto d = density_estimate(ps, 1e3);
  REQUIRE(d.size() == 3);
  CHECK(d[0].density == doctest::Approx(0.7));
}
