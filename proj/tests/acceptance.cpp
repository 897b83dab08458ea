// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "beurling/concentration.hpp"
#include "beurling/discretizer.hpp"
#include "beurling/numsys.hpp"
#include "beurling/oscillating.hpp"
#include "beurling/special.hpp"
#include "beurling/templates.hpp"
#include "beurling/verify.hpp"
#include "oracles.hpp"

using namespace beurling;

namespace {

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

Template li_template() { return Template::continuous(std::make_shared<SmallLiPart>()); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string slopes(const TrendSummary& t) {
  std::string out = fmt("pooled slope %.4f over %zu decades, per seed", t.pooled_slope, t.pooled.size());
  for (double s : t.per_seed_slopes) out += fmt(" %.3f", s);
  return out;
}

// ---- criteria ---------------------------------------------------------------

Outcome counting_bound() {
  const Template li = li_template();
  const auto ps = discretize(li, 42, 1e6);
  const CountDeviation d = count_deviation(ps, li, 1e6);

  const Template mixed(std::make_shared<SmallLiPart>(), integer_atoms(3, 2000, 0.45), "li+atoms");
  const auto pm = discretize(mixed, 42, 1e6);
  const CountDeviation dm = count_deviation(pm, mixed, 1e6);
  return {d.sup <= 1.0 && dm.sup <= 2.0,
          fmt("li: sup|pi - F| = %.6f over %zu primes; mixed: %.6f over %zu primes", d.sup, ps.size(), dm.sup,
              pm.size())};
}

Outcome envelope_trend() {
  const Template li = li_template();
  const auto xs = log_grid(10.0, 1e6, 32);
  const auto ts = default_t_grid();
  std::vector<std::vector<DecadeMax>> per_seed;
  double worst = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto ps = discretize(li, seed, 1e6);
    const auto report = deviation_sweep(ps, li, xs, ts, {.tol = 1e-8});
    per_seed.push_back(report.decade_max);
    worst = std::max(worst, report.max_ratio);
  }
  const TrendSummary trend = pool_trend(per_seed);
  return {trend.pass(), fmt("max ratio %.4f; ", worst) + slopes(trend)};
}

struct TailSetting {
  std::size_t terms;
  VariableModel model;
  double v;
};

Outcome tail_inequality() {
  const double u0 = solve_u0();
  const double residual = std::exp(u0) - 1.0 - u0 - u0 * u0;
  bool pass = std::abs(residual) < 1e-10 && std::abs(u0 - 1.79328) <= 5e-6;

  const auto rad = VariableModel::rademacher();
  const auto sparse = VariableModel::sparse(2.0, 0.05);
  const auto sparser = VariableModel::sparse(2.0, 0.01);
  const auto skew = VariableModel::two_point(2.0, 0.1);
  const std::vector<TailSetting> settings = {
      {10, rad, 2},       {10, rad, 4},        {10, rad, 6},        {10, sparse, 4},     {10, sparse, 6},
      {10, sparse, 8},    {100, rad, 10},      {100, rad, 20},      {100, rad, 30},      {100, sparse, 40},
      {100, sparse, 50},  {100, skew, 20},     {100, skew, 90},     {1000, rad, 30},     {1000, rad, 60},
      {1000, rad, 100},   {1000, sparser, 80}, {1000, sparser, 100}, {1000, skew, 50},   {1000, skew, 820},
  };
  int gaussian = 0, linear = 0, failed = 0;
  double worst_margin = -1.0;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const auto& s = settings[i];
    const auto r = kolmogorov_check(s.model, s.terms, s.v, 100000, 1000 + i);
    (r.regime == TailRegime::gaussian ? gaussian : linear)++;
    if (!r.pass()) ++failed;
    worst_margin = std::max(worst_margin, r.empirical - r.radius - r.bound);
  }
  pass = pass && failed == 0 && gaussian > 0 && linear > 0;
  return {pass, fmt("u0 = %.12f (residual %.1e); %zu settings, %d gaussian, %d linear, %d failed, "
                    "max(lower limit - bound) = %.4f",
                    u0, residual, settings.size(), gaussian, linear, failed, worst_margin)};
}

Outcome gap_trend() {
  std::vector<std::vector<DecadeMax>> per_seed;
  double worst_excess = -INFINITY, worst_ratio = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto ps = discretize(li_template(), seed, 1e6);
    const GapReport g = pi_Li_gap_check(ps, 16.0, 1e6);
    per_seed.push_back(g.decade_max);
    worst_excess = std::max(worst_excess, g.worst_ceiling_excess);
    worst_ratio = std::max(worst_ratio, g.max_ratio);
  }
  const TrendSummary trend = pool_trend(per_seed);
  return {trend.pass() && worst_excess <= 1e-9,
          fmt("max |Pi - Li|/log log x = %.4f, ceiling excess %.3g; ", worst_ratio, worst_excess) + slopes(trend)};
}

Outcome semigroup_oracle() {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> logp(std::log(1.05), std::log(60.0));
  std::uniform_real_distribution<double> logx(0.0, std::log(1e3));
  int mismatches = 0;
  std::size_t elements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> primes(count(gen));
    for (double& p : primes) p = trial % 4 == 0 ? std::round(std::exp(logp(gen))) + 1.0 : std::exp(logp(gen));
    const auto ps = PrimeSystem::finite(primes);
    const std::vector<double> sorted(ps.primes().begin(), ps.primes().end());
    const double x = std::exp(logx(gen));

    const auto expected = oracle::exponent_loops(sorted, x);
    IntegerStream stream(ps, x);
    GenInteger g;
    std::size_t i = 0;
    long N = 0, M = 0, L = 0;
    for (; stream.next(g); ++i) {
      if (i >= expected.size() || g.value != expected[i].value || stream.factor_indices() != expected[i].indices ||
          g.omega != expected[i].omega || g.squarefree != expected[i].squarefree) {
        ++mismatches;
        break;
      }
      ++N;
      const int sign = expected[i].omega % 2 == 0 ? 1 : -1;
      if (expected[i].squarefree) M += sign;
      L += sign;
    }
    elements += i;
    if (i != expected.size()) ++mismatches;
    if (N_count(ps, x) != N || M_sum(ps, x) != M || L_sum(ps, x) != L) ++mismatches;

    // sum_{n <= x} M(x/n) from the oracle list alone
    long conv = 0;
    for (const auto& n : expected) {
      const long double y = static_cast<long double>(x) / n.value;
      for (const auto& m : expected) {
        if (m.value > y) break;
        if (m.squarefree) conv += m.omega % 2 == 0 ? 1 : -1;
      }
    }
    if (conv != 1 || !mertens_identity_check(ps, sorted.size(), x).ok()) ++mismatches;
  }
  return {mismatches == 0, fmt("100 systems, %zu integers, %d mismatches", elements, mismatches)};
}

Outcome zeta_cross_check() {
  const auto ps = discretize(li_template(), 42, 1e4);
  const ZetaValue euler = zeta_euler(ps, 2.0);
  const ZetaValue dirichlet = zeta_dirichlet(ps, 2.0);
  const double diff = std::abs(euler.value - dirichlet.value);
  const double budget = euler.tail_bound + dirichlet.tail_bound;
  const double single = zeta_euler(PrimeSystem::finite({2.0}), 2.0).value.real();
  return {diff <= budget && std::abs(single - 4.0 / 3.0) <= 1e-12,
          fmt("|euler - dirichlet| = %.3e <= tails %.3e; {2}: %.17g", diff, budget, single)};
}

Outcome z_bound_shape() {
  const auto ps = discretize(li_template(), 42, 1e6);
  const double sigmas[] = {0.6, 0.75, 0.9};
  const double ts[] = {0.0, 10.0, 100.0};
  bool pass = true;
  std::string detail;
  for (double sigma : sigmas) {
    // least-squares slope of ln ratio against ln(t + 1)
    double sx = 0, sy = 0, sxx = 0, sxy = 0, top = 0;
    for (double t : ts) {
      const double z = std::abs(Z_eval(ps, {sigma, t}).value);
      const double d = sigma - 0.5;
      const double ratio = z / (1.0 / d + std::sqrt(std::log(t + 1.0) / d));
      const double lx = std::log(t + 1.0), ly = std::log(ratio);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
      top = std::max(top, ratio);
    }
    const double n = 3.0;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    pass = pass && std::isfinite(top) && slope <= 0.05;
    detail += fmt("%ssigma %.2f: max ratio %.4f, slope %.4f", detail.empty() ? "" : "; ", sigma, top, slope);
  }
  return {pass, detail};
}

Outcome oscillating_soundness() {
  const auto p = OscillationParams::defaults();
  const auto v = p.validate();
  bool floor_ok = true;
  for (double a : p.a) floor_ok = floor_ok && a >= std::log(12.0 * oracle::zeta_table(2)) - 1e-12;
  double worst = INFINITY;
  int points = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double lo = p.block_start_log(k) - 0.05;
    const double hi = p.block_end_log(k) + 0.05;
    const int n = 5000;
    double prev = pi_c_eval(std::exp(lo), p);
    for (int i = 1; i <= n; ++i) {
      const double value = pi_c_eval(std::exp(lo + (hi - lo) * i / n), p);
      worst = std::min(worst, value - prev);
      prev = value;
      ++points;
    }
  }
  return {v.disjoint && v.ok() && floor_ok && worst >= -1e-9,
          fmt("disjoint %s, floor %s, %d points, smallest increment %.3g", v.disjoint ? "yes" : "no",
              floor_ok ? "yes" : "no", points, worst)};
}

Outcome grid_support() {
  const auto v = log_gap_grid(0.8, 1000.0);
  const Template g = grid_template(li_template(), v);
  const double x_max = v.back();
  const auto ps = discretize(g, 42, x_max);
  std::size_t outside = 0;
  for (double p : ps.primes())
    if (!std::binary_search(v.begin(), v.end(), p)) ++outside;
  const double sup = count_deviation(ps, g, x_max).sup;
  return {outside == 0 && sup <= 2.0 + 1e-9 && !ps.empty(),
          fmt("%zu grid points, %zu primes, %zu off-grid, sup|pi - F| = %.6f", v.size(), ps.size(), outside, sup)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"counting bound", counting_bound},
      {"exponential-sum envelope trend", envelope_trend},
      {"two-regime tail inequality", tail_inequality},
      {"Pi - Li gap trend", gap_trend},
      {"semigroup oracle equivalence", semigroup_oracle},
      {"zeta cross-check", zeta_cross_check},
      {"Z(s) bound shape", z_bound_shape},
      {"oscillating template soundness", oscillating_soundness},
      {"grid support", grid_support},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
