#include <cmath>
#include <complex>
#include <memory>
#include <random>

#include "beurling/concentration.hpp"
#include "beurling/discretizer.hpp"
#include "beurling/numsys.hpp"
#include "beurling/oscillating.hpp"
#include "beurling/special.hpp"
#include "beurling/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beurling;

namespace {

Template li_template() { return Template::continuous(std::make_shared<SmallLiPart>()); }

// density 1/(u log u): not integrable at u = 1
class DivergentPart final : public ContinuousPart {
 public:
  double eval(double x) const override { return std::log(x); }
  double density(double x) const override { return 1.0 / (x * std::log(x)); }
  std::string id() const override { return "divergent"; }
};

double binomial_upper_tail(int n, int k) {
  double total = 0.0;
  for (int i = k; i <= n; ++i) total += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) - n * std::log(2.0));
  return total;
}

}  // namespace

TEST_CASE("exponential sums") {
  const auto ps = discretize(li_template(), 42, 1e4);
  for (double x : {10.0, 500.0, 1e4}) {
    CHECK(exp_sum(ps, x, 0.0) == std::complex<double>(static_cast<double>(pi_count(ps, x)), 0.0));
    for (double t : {1.0, 33.0, 1000.0}) {
      const auto s = exp_sum(ps, x, t);
      CHECK(std::abs(exp_sum(ps, x, -t) - std::conj(s)) < 1e-10);
      CHECK(std::abs(s) <= pi_count(ps, x) + 1e-9);
    }
  }
  const auto two = PrimeSystem::finite({2.0});
  const auto s = exp_sum(two, 3.0, 2.7);
  CHECK(std::abs(s - std::exp(std::complex<double>(0.0, -2.7 * std::log(2.0)))) < 1e-15);
  CHECK(std::abs(s) == doctest::Approx(1.0));
}

TEST_CASE("exponential integrals") {
  const Template log_t = Template::continuous(std::make_shared<LogPart>());
  for (double x : {3.0, 1e3, 1e6}) {
    CHECK(exp_int(log_t, x, 0.0).real() == doctest::Approx(std::log(x)));
    for (double t : {0.3, -1.0, 10.0, 1000.0}) {
      const std::complex<double> it(0.0, t);
      const auto closed = (1.0 - std::exp(-it * std::log(x))) / it;
      CHECK(std::abs(exp_int(log_t, x, t, 1e-10) - closed) < 1e-10);
    }
  }

  const Template atoms = Template::atomic({{2.0, 0.4}, {3.0, 0.6}}, "a");
  const auto expected = 0.4 * std::exp(std::complex<double>(0, -std::log(2.0))) + 0.6 * std::exp(std::complex<double>(0, -std::log(3.0)));
  CHECK(std::abs(exp_int(atoms, 10.0, 1.0) - expected) < 1e-15);

  // li against an independent Simpson rule in u
  const Template li = li_template();
  const double x = 200.0, t = 10.0;
  const double re = oracle::simpson([&](double u) { return std::cos(t * std::log(u)) * li_density(u); }, 1.0, x, 1e-13);
  const double im = oracle::simpson([&](double u) { return -std::sin(t * std::log(u)) * li_density(u); }, 1.0, x, 1e-13);
  CHECK(std::abs(exp_int(li, x, t, 1e-11) - std::complex<double>(re, im)) < 1e-9);
  CHECK(std::abs(exp_int(li, x, -t, 1e-11) - std::complex<double>(re, -im)) < 1e-9);

  const Template osc = Template::continuous(std::make_shared<OscillatingPart>(OscillationParams::defaults(), OscillationVariant::big_pi));
  const auto whole = exp_int(osc, 2e4, 50.0, 1e-9);
  const auto split = exp_int(osc, 1e4, 50.0, 1e-9) + exp_int_continuous(*osc.continuous_part(), 1e4, 2e4, 50.0, 1e-9);
  CHECK(std::abs(whole - split) < 1e-8);

  const Template bad = Template::continuous(std::make_shared<DivergentPart>());
  CHECK_THROWS_AS(exp_int(bad, 10.0, 1.0, 1e-12), QuadratureError);
}

TEST_CASE("count deviation and the sweep at t = 0") {
  const Template li = li_template();
  const auto ps = discretize(li, 7, 1e5);
  const auto cd = count_deviation(ps, li, 1e5);
  CHECK(cd.sup <= 1.0 + 1e-9);
  CHECK(cd.sup > 0.5);

  const auto xs = log_grid(10.0, 1e5, 32);
  CHECK(xs.front() == 10.0);
  CHECK(xs.back() == 1e5);
  CHECK(xs.size() == 129);
  const std::vector<double> ts = {0.0};
  const auto report = deviation_sweep(ps, li, xs, ts);
  for (const auto& r : report.records) {
    const double direct = std::abs(static_cast<double>(pi_count(ps, r.x)) - li_eval(r.x));
    CHECK(r.deviation == doctest::Approx(direct).epsilon(1e-9));
    CHECK(r.ratio == doctest::Approx(direct / std::sqrt(r.x)).epsilon(1e-9));
    CHECK(r.deviation <= 2.0);
  }
  CHECK(report.slope < 0.0);
  CHECK(report.count.sup == cd.sup);
}

TEST_CASE("sweep records match pointwise sums") {
  const Template li = li_template();
  const auto ps = discretize(li, 3, 1e4);
  const auto xs = log_grid(10.0, 1e4, 8);
  const std::vector<double> ts = {10.0, -100.0};
  const auto report = deviation_sweep(ps, li, xs, ts, {.tol = 1e-10, .record_jumps = true, .threads = 2});
  int checked = 0;
  for (const auto& r : report.records) {
    if (checked++ % 97 != 0) continue;
    const double x = r.x;
    const auto direct = exp_sum(ps, x, r.t) - exp_int(li, x, r.t, 1e-11);
    CHECK(r.deviation == doctest::Approx(std::abs(direct)).epsilon(1e-7));
    CHECK(r.envelope == doctest::Approx(envelope(x, r.t)));
  }
  CHECK(report.max_ratio > 0.0);
  CHECK(report.decade_max.size() == 3);  // the lone point x = 1e4 is not a decade
}

TEST_CASE("trend slopes") {
  std::vector<DecadeMax> flat = {{10, 0.5}, {100, 0.5}, {1000, 0.5}};
  CHECK(trend_slope(flat) == doctest::Approx(0.0));
  std::vector<DecadeMax> growing = {{10, 1}, {100, 10}, {1000, 100}};
  CHECK(trend_slope(growing) == doctest::Approx(1.0));
  std::vector<std::vector<DecadeMax>> seeds = {flat, {{10, 0.4}, {100, 0.6}, {1000, 0.5}}};
  const auto summary = pool_trend(seeds);
  CHECK(summary.pooled[1].max_ratio == 0.6);
  CHECK(summary.per_seed_slopes.size() == 2);
  CHECK(std::isnan(trend_slope(std::vector<DecadeMax>{{10, 1}})));
}

TEST_CASE("u0") {
  const double u0 = solve_u0();
  CHECK(std::abs(std::exp(u0) - 1 - u0 - u0 * u0) < 1e-10);
  CHECK(std::abs(u0 - 1.79328) <= 5e-6);
  CHECK(u0 > 1.0);
  CHECK(u0 < 3.0);
}

TEST_CASE("two-regime tail bound") {
  const double u0 = solve_u0();
  for (double sigma2 : {0.5, 10.0, 250.0}) {
    const double v = u0 * sigma2;
    const double gaussian = std::exp(-v * v / (4 * sigma2));
    const double linear = std::exp(-u0 * v / 4);
    CHECK(std::abs(gaussian - linear) <= 1e-12 * gaussian);
    CHECK(tail_bound(sigma2, v) == doctest::Approx(gaussian).epsilon(1e-12));
    CHECK(tail_bound(sigma2, std::nextafter(v, 1e9)) == doctest::Approx(linear).epsilon(1e-12));
  }
  CHECK(tail_bound(3.0, 0.0) == 1.0);
}

TEST_CASE("Monte Carlo tail check") {
  const auto zero = kolmogorov_check(VariableModel::rademacher(), 10, 0.0, 1000, 1);
  CHECK(zero.bound == 1.0);
  CHECK(zero.pass());

  const auto r = kolmogorov_check(VariableModel::rademacher(), 100, 30.0, 100000, 2024);
  CHECK(r.bound == doctest::Approx(std::exp(-9.0 / 4.0)));
  CHECK(r.regime == TailRegime::gaussian);
  // S >= 30 iff at least 65 heads
  const double exact = binomial_upper_tail(100, 65);
  CHECK(exact == doctest::Approx(0.0018).epsilon(0.1));
  CHECK(std::abs(r.empirical - exact) < 5 * std::sqrt(exact / 1e5));
  CHECK(r.pass());

  const auto threaded = kolmogorov_check(VariableModel::rademacher(), 100, 30.0, 100000, 2024, 3);
  CHECK(threaded.hits == r.hits);

  const auto sparse = VariableModel::sparse(2.0, 0.05);
  CHECK(sparse.variance() == doctest::Approx(0.2));
  const auto skew = VariableModel::two_point(1.5, 0.2);
  CHECK(skew.mean() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(kolmogorov_check(skew, 50, 6.0, 20000, 9).pass());
  CHECK_THROWS_AS(kolmogorov_check(VariableModel::sparse(3.0, 0.1), 10, 1.0, 10, 1), ModelError);
  CHECK_THROWS_AS(VariableModel::two_point(1.0, 0.8).validate(), ModelError);

  CHECK(wilson_lower(0, 100) == 0.0);
  CHECK(wilson_lower(50, 100) < 0.5);
  CHECK(wilson_lower(50, 100) > 0.38);
}

TEST_CASE("Pi - Li gap") {
  const auto ps = discretize(li_template(), 42, 1e5);
  const auto gap = pi_Li_gap_check(ps, 16.0, 1e5);
  CHECK(gap.worst_ceiling_excess <= 1e-9);
  CHECK(gap.decade_max.size() == 4);  // [16, 100) counts, the lone point 1e5 does not
  CHECK(gap.max_ratio < 5.0);
  CHECK(gap.count_deviation <= 1.0 + 1e-9);
  const double below = 0.5 * (1.0 + ps.primes()[0]);
  CHECK(riemann_pi(ps, below) == 0.0);
  CHECK_THROWS_AS(pi_Li_gap_check(ps, 10.0, 1e3), std::invalid_argument);
}

TEST_CASE("Moebius convolution identity") {
  const auto ps = PrimeSystem::finite({2.0, 3.0});
  const auto check = mertens_identity_check(ps, 2, 10.0);
  CHECK(check.convolution_sum == 1);
  CHECK(check.ok());
  CHECK(mertens_identity_check(ps, 2, 1.5).convolution_sum == 1);

  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> logp(std::log(1.1), std::log(50.0));
  std::uniform_real_distribution<double> logx(0.0, std::log(1e3));
  for (int i = 0; i < 100; ++i) {
    std::vector<double> primes(1 + i % 8);
    for (double& p : primes) p = std::exp(logp(gen));
    CHECK(mertens_identity_check(PrimeSystem::finite(primes), primes.size(), std::exp(logx(gen))).ok());
  }
}

TEST_CASE("cell containment") {
  const Template li = li_template();
  const auto ps = discretize(li, 42, 3000.0);
  const auto ok = cell_containment(ps, li);
  CHECK(ok.ok());
  CHECK(ok.matched == ps.size());

  // move one prime into its right neighbour's cell
  std::vector<double> primes(ps.primes().begin(), ps.primes().end());
  const Partition part = build_partition(li, Branch::continuous, 3000.0);
  primes[100] = 0.5 * (part.q[101] + part.q[102]);
  const PrimeSystem moved(primes, ps.meta());
  const auto bad = cell_containment(moved, li);
  CHECK_FALSE(bad.ok());
  CHECK(bad.matched == ps.size() - 1);
  CHECK(bad.unmatched_hi == part.q[101]);

  const Template mixed(std::make_shared<SmallLiPart>(), integer_atoms(3, 200, 0.45), "mixed");
  CHECK(cell_containment(discretize(mixed, 7, 2000.0), mixed).ok());

  std::vector<double> fewer(ps.primes().begin(), ps.primes().end() - 1);
  CHECK_FALSE(cell_containment(PrimeSystem(fewer, ps.meta()), li).ok());
}

TEST_CASE("decade maxima coverage") {
  const std::vector<double> xs = {20.0, 50.0, 99.0, 150.0, 900.0, 1000.0};
  const std::vector<double> vs = {1.0, 3.0, 2.0, 0.5, 0.7, 9.0};
  const auto all = decade_maxima(xs, vs);
  REQUIRE(all.size() == 3);
  CHECK(all[0].max_ratio == 3.0);
  CHECK(all[2].decade_start == doctest::Approx(1000.0));
  // [20, 100) covers 0.7 of a decade, {1000} covers none
  const auto covered = decade_maxima(xs, vs, kMinDecadeCoverage);
  REQUIRE(covered.size() == 2);
  CHECK(covered[1].max_ratio == 0.7);
  CHECK(decade_maxima(xs, vs, 0.8).size() == 1);
}

TEST_CASE("tiny panels stop at rounding level") {
  // a panel of width 2e-14 in log u: only a few doubles apart in v
  const SmallLiPart li;
  const double a = 750727.58689529495, b = 750727.5868954563;
  std::complex<double> value;
  REQUIRE_NOTHROW(value = exp_int_continuous(li, a, b, 1000.0, 1e-30));
  const double mid = 0.5 * (a + b);
  const auto midpoint = li.density(mid) * (b - a) * std::polar(1.0, -1000.0 * std::log(mid));
  // the endpoints in v are exact only to one ulp, which costs |density * u| ulp(v)
  const double vb = std::log(b);
  const double endpoint_error = li.density(mid) * mid * (std::nextafter(vb, 2 * vb) - vb);
  CHECK(std::abs(value - midpoint) <= 4.0 * endpoint_error);
}
