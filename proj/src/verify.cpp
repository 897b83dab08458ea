#include "beurling/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "beurling/discretizer.hpp"
#include "beurling/kernels.hpp"
#include "beurling/numsys.hpp"
#include "beurling/parallel.hpp"
#include "beurling/quadrature.hpp"
#include "beurling/special.hpp"

namespace beurling {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_panel(double lo, double hi) {
  return "[" + format_g17(std::exp(lo)) + ", " + format_g17(std::exp(hi)) + "]";
}

struct SortedPoint {
  double x;
  bool jump;  // a prime position: evaluate the left limit as well
  bool record;
};

}  // namespace

std::complex<double> exp_sum(const PrimeSystem& ps, double x, double t) {
  const std::size_t n = pi_count(ps, x);
  return phase_sum(ps.log_primes().first(n), t);
}

std::complex<double> exp_int_continuous(const ContinuousPart& part, double a, double b, double t, double tol) {
  if (!(b > a)) return 0.0;
  if (t == 0.0) return part.eval(b) - part.eval(a);
  const double va = std::log(a);
  const double vb = std::log(b);
  const double wave_cap = 1.0 / (4.0 * std::abs(t));
  auto g = [&](double v) -> std::complex<double> {
    const double u = std::exp(v);
    return std::polar(part.density(u) * u, -t * v);
  };

  std::vector<double> breaks = part.log_breakpoints(va, vb);
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(vb);

  std::complex<double> total = 0.0;
  AdaptiveResult<std::complex<double>> worst;
  bool converged = true;
  double v = va;
  std::size_t next_break = 0;
  while (v < vb) {
    while (breaks[next_break] <= v) ++next_break;
    const double width = std::min(part.panel_width_cap(v), wave_cap);
    const double end = std::min(v + width, breaks[next_break]);
    const auto r = adaptive_gk15(g, v, end, tol * (end - v) / (vb - va), end - v);
    total += r.value;
    if (!r.converged) {
      converged = false;
      if (r.worst_error > worst.worst_error) worst = r;
    }
    v = end;
  }
  if (!converged) {
    throw QuadratureError("exp_int: no convergence on panel u in " + format_panel(worst.worst_lo, worst.worst_hi) +
                              " (error " + format_g17(worst.worst_error) + ")",
                          std::exp(worst.worst_lo), std::exp(worst.worst_hi));
  }
  return total;
}

std::complex<double> exp_int(const Template& tpl, double x, double t, double tol) {
  std::complex<double> total = 0.0;
  if (tpl.has_continuous()) {
    total = t == 0.0 ? std::complex<double>(tpl.continuous_eval(x)) : exp_int_continuous(*tpl.continuous_part(), 1.0, x, t, tol);
  }
  for (const Atom& a : tpl.atoms_in(1.0, x)) total += std::polar(a.mass, -t * std::log(a.position));
  return total;
}

double envelope(double x, double t) {
  return std::sqrt(x) + std::sqrt(x * std::log(std::abs(t) + 1.0) / std::log(x + 1.0));
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> out;
  const double step = 1.0 / per_decade;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  const auto n = static_cast<long>(std::ceil((b - a) / step - 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(k == n ? hi : std::pow(10.0, a + step * static_cast<double>(k)));
  return out;
}

std::vector<double> default_t_grid() { return {0.0, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0, 1000.0, -1000.0}; }

std::vector<DecadeMax> decade_maxima(std::span<const double> xs, std::span<const double> values, double min_coverage) {
  std::vector<DecadeMax> out;
  if (xs.empty()) return out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double start = std::pow(10.0, std::floor(std::log10(xs[i]) + 1e-12));
    auto it = std::find_if(out.begin(), out.end(), [&](const DecadeMax& d) { return d.decade_start == start; });
    if (it == out.end()) {
      out.push_back({start, values[i]});
    } else {
      it->max_ratio = std::max(it->max_ratio, values[i]);
    }
  }
  std::sort(out.begin(), out.end(), [](const DecadeMax& a, const DecadeMax& b) { return a.decade_start < b.decade_start; });
  if (min_coverage > 0.0) {
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    std::erase_if(out, [&](const DecadeMax& d) {
      const double covered = std::log10(std::min(*hi, 10.0 * d.decade_start)) - std::log10(std::max(*lo, d.decade_start));
      return covered < min_coverage;
    });
  }
  return out;
}

double trend_slope(std::span<const DecadeMax> decades) {
  std::vector<double> lx, ly;
  for (const auto& d : decades) {
    if (!(d.max_ratio > 0.0)) continue;
    lx.push_back(std::log(d.decade_start * std::sqrt(10.0)));
    ly.push_back(std::log(d.max_ratio));
  }
  if (lx.size() < 2) return kNaN;
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

CountDeviation count_deviation(const PrimeSystem& ps, const Template& tpl, double x_hi) {
  std::vector<double> points(ps.primes().begin(), ps.primes().end());
  for (const Atom& a : tpl.atoms_in(1.0, x_hi)) points.push_back(a.position);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points.push_back(x_hi);

  const auto primes = ps.primes();
  CountDeviation out;
  std::size_t below = 0;  // primes < x
  for (double x : points) {
    if (x > x_hi) break;
    while (below < primes.size() && primes[below] < x) ++below;
    std::size_t upto = below;
    while (upto < primes.size() && primes[upto] <= x) ++upto;
    const double left = std::abs(static_cast<double>(below) - tpl.eval_left(x));
    const double right = std::abs(static_cast<double>(upto) - tpl.eval(x));
    if (left > out.sup) out = {left, x, true};
    if (right > out.sup) out = {right, x, false};
  }
  return out;
}

DeviationReport deviation_sweep(const PrimeSystem& ps, const Template& tpl, std::span<const double> xs,
                                std::span<const double> ts, const SweepOptions& options) {
  DeviationReport report;
  if (xs.empty() || ts.empty()) return report;
  const double x_lo = *std::min_element(xs.begin(), xs.end());
  const double x_hi = *std::max_element(xs.begin(), xs.end());
  ps.require_in_range(x_hi);

  std::vector<SortedPoint> points;
  for (double x : xs) points.push_back({x, false, true});
  if (options.include_jumps) {
    for (double p : ps.primes()) {
      if (p >= x_lo && p <= x_hi) points.push_back({p, true, options.record_jumps});
    }
  }
  std::stable_sort(points.begin(), points.end(), [](const SortedPoint& a, const SortedPoint& b) { return a.x < b.x; });

  const auto primes = ps.primes();
  const auto logs = ps.log_primes();
  const double total_log = std::log(x_hi);

  // One pass per t; the continuous integral is accumulated interval by
  // interval so each point costs one short quadrature.
  std::vector<std::vector<DeviationRecord>> per_t(ts.size());
  std::vector<std::vector<double>> point_ratio(ts.size());
  parallel_chunks(ts.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double t = ts[k];
      auto& recs = per_t[k];
      auto& ratios = point_ratio[k];
      ratios.assign(points.size(), 0.0);
      std::complex<double> s = 0.0;
      std::complex<double> sc = 0.0;
      std::size_t next_prime = 0;
      std::size_t next_atom = 0;
      const auto atoms = tpl.atoms();
      double prev_x = 1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i].x;
        if (x > prev_x) {
          if (tpl.has_continuous()) {
            if (t == 0.0) {
              sc += tpl.continuous_eval(x) - tpl.continuous_eval(prev_x);
            } else {
              sc += exp_int_continuous(*tpl.continuous_part(), prev_x, x, t,
                                       options.tol * (std::log(x) - std::log(prev_x)) / total_log);
            }
          }
          prev_x = x;
        }
        // Atoms strictly before x; an atom at x joins S_c together with S below.
        while (next_atom < atoms.size() && atoms[next_atom].position < x) {
          sc += std::polar(atoms[next_atom].mass, -t * std::log(atoms[next_atom].position));
          ++next_atom;
        }
        while (next_prime < primes.size() && primes[next_prime] < x) {
          s += std::polar(1.0, -t * logs[next_prime]);
          ++next_prime;
        }
        const double env = envelope(x, t);
        double worst = 0.0;
        if (points[i].jump) {
          const double dev = std::abs(s - sc);
          worst = dev / env;
          if (points[i].record) recs.push_back({std::nextafter(x, 0.0), t, dev, env, dev / env});
        }
        std::complex<double> s_at = s;
        std::complex<double> sc_at = sc;
        for (std::size_t j = next_prime; j < primes.size() && primes[j] == x; ++j) s_at += std::polar(1.0, -t * logs[j]);
        for (std::size_t j = next_atom; j < atoms.size() && atoms[j].position == x; ++j)
          sc_at += std::polar(atoms[j].mass, -t * std::log(x));
        const double dev = std::abs(s_at - sc_at);
        worst = std::max(worst, dev / env);
        if (points[i].record) recs.push_back({x, t, dev, env, dev / env});
        ratios[i] = worst;
      }
    }
  });

  std::vector<double> xs_all;
  std::vector<double> best;
  xs_all.reserve(points.size());
  best.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double m = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (point_ratio[k][i] > report.max_ratio) {
        report.max_ratio = point_ratio[k][i];
        report.max_ratio_x = points[i].x;
        report.max_ratio_t = ts[k];
      }
      m = std::max(m, point_ratio[k][i]);
    }
    xs_all.push_back(points[i].x);
    best.push_back(m);
  }
  report.decade_max = decade_maxima(xs_all, best, kMinDecadeCoverage);
  report.slope = trend_slope(report.decade_max);
  for (auto& recs : per_t) report.records.insert(report.records.end(), recs.begin(), recs.end());
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const DeviationRecord& a, const DeviationRecord& b) { return a.x < b.x; });
  report.count = count_deviation(ps, tpl, x_hi);
  return report;
}

bool TrendSummary::pass() const {
  if (pooled.size() < min_decades || !std::isfinite(pooled_slope)) return false;
  return pooled_slope <= max_slope;
}

TrendSummary pool_trend(std::span<const std::vector<DecadeMax>> per_seed, double max_slope) {
  TrendSummary out;
  out.max_slope = max_slope;
  std::vector<double> xs, ys;
  for (const auto& decades : per_seed) {
    out.per_seed_slopes.push_back(trend_slope(decades));
    for (const auto& d : decades) {
      xs.push_back(d.decade_start);
      ys.push_back(d.max_ratio);
    }
  }
  out.pooled = decade_maxima(xs, ys);
  out.pooled_slope = trend_slope(out.pooled);
  return out;
}

GapReport pi_Li_gap_check(const PrimeSystem& ps, double x_lo, double x_hi, int per_decade) {
  if (!(x_lo >= 16.0)) throw std::invalid_argument("pi_Li_gap_check: x_lo must be >= 16");
  ps.require_in_range(x_hi);
  GapReport report;
  const Template li_template = Template::continuous(std::make_shared<SmallLiPart>());
  report.count_deviation = count_deviation(ps, li_template, x_hi).sup;

  // Jumps of Pi: (p^v, 1/v), sorted.
  struct Jump {
    long double at;
    double weight;
  };
  std::vector<Jump> jumps;
  for (double p : ps.primes()) {
    long double power = p;
    for (int v = 1; power <= x_hi; ++v, power *= p) jumps.push_back({power, 1.0 / v});
  }
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.at < b.at; });

  struct Eval {
    double x;
    bool left;
  };
  std::vector<Eval> evals;
  for (double x : log_grid(x_lo, x_hi, per_decade)) evals.push_back({x, false});
  for (const Jump& j : jumps) {
    const auto x = static_cast<double>(j.at);
    if (x >= x_lo && x <= x_hi) {
      evals.push_back({x, true});
      evals.push_back({x, false});
    }
  }
  std::sort(evals.begin(), evals.end(), [](const Eval& a, const Eval& b) {
    return a.x < b.x || (a.x == b.x && a.left && !b.left);
  });

  const double log_p1 = ps.empty() ? 0.0 : std::log(ps.primes()[0]);
  std::vector<double> xs, ratios;
  double big_pi = 0.0;
  std::size_t next = 0;
  report.worst_ceiling_excess = -std::numeric_limits<double>::infinity();
  for (const Eval& e : evals) {
    while (next < jumps.size() && (jumps[next].at < e.x || (!e.left && jumps[next].at == e.x))) {
      big_pi += jumps[next].weight;
      ++next;
    }
    const double gap = std::abs(big_pi - Li_eval(e.x));
    const double ratio = gap / std::log(std::log(e.x));
    xs.push_back(e.x);
    ratios.push_back(ratio);
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.max_ratio_x = e.x;
    }
    const int V = log_p1 > 0.0 ? static_cast<int>(std::floor(std::log(e.x) / log_p1)) : 0;
    double harmonic = 0.0;
    for (int v = 1; v <= V; ++v) harmonic += 1.0 / v;
    const double ceiling = report.count_deviation * harmonic + li_power_tail(e.x, V);
    report.worst_ceiling_excess = std::max(report.worst_ceiling_excess, gap - ceiling);
  }
  report.points = evals.size();
  report.decade_max = decade_maxima(xs, ratios, kMinDecadeCoverage);
  report.slope = trend_slope(report.decade_max);
  return report;
}

CellCheck cell_containment(const PrimeSystem& ps, const Template& tpl, unsigned threads) {
  struct Cell {
    double lo, hi;
    bool closed;
  };
  std::vector<Cell> cells;
  const double x_max = ps.x_max();
  if (!std::isfinite(x_max)) throw std::invalid_argument("cell_containment: system needs a finite x_max");
  const Partition cont = build_partition(tpl, Branch::continuous, x_max, threads);
  for (std::size_t j = 1; j <= cont.cells(); ++j) cells.push_back({cont.q[j - 1], cont.q[j], false});
  const Partition disc = build_partition(tpl, Branch::discrete, x_max);
  for (std::size_t j = 1; j <= disc.cells(); ++j) cells.push_back({disc.q[j - 1], disc.q[j], true});
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.hi < b.hi; });

  CellCheck check;
  check.expected = cells.size();
  check.found = ps.size();
  std::multiset<double> free(ps.primes().begin(), ps.primes().end());
  for (const Cell& c : cells) {
    auto it = c.closed ? free.lower_bound(c.lo) : free.upper_bound(c.lo);
    if (it == free.end() || *it > c.hi) {
      if (check.unmatched_hi == 0.0) {
        check.unmatched_lo = c.lo;
        check.unmatched_hi = c.hi;
      }
      continue;
    }
    free.erase(it);
    ++check.matched;
  }
  return check;
}

MertensCheck mertens_identity_check(const PrimeSystem& ps, std::size_t k, double x) {
  const PrimeSystem small = ps.first(k);
  const auto ints = generate_integers(small, x);
  std::vector<long double> values;
  std::vector<std::int64_t> mertens;
  std::int64_t running = 0;
  std::int64_t liouville = 0;
  for (const auto& g : ints) {
    values.push_back(g.value);
    running += g.mu();
    mertens.push_back(running);
    liouville += g.lambda();
  }
  // M(x / n) = sum of mu(m) over m n <= x, decided on the product.
  auto mertens_quotient = [&](long double n) -> std::int64_t {
    auto idx = static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), x / n) - values.begin());
    while (idx > 0 && values[idx - 1] * n > x) --idx;
    while (idx < values.size() && values[idx] * n <= x) ++idx;
    return idx == 0 ? 0 : mertens[idx - 1];
  };
  MertensCheck out;
  std::int64_t via_mertens = 0;
  for (long double n : values) {
    out.convolution_sum += mertens_quotient(n);
    if (n * n <= x) via_mertens += mertens_quotient(n * n);
  }
  out.liouville_via_mertens = via_mertens == liouville;
  return out;
}

}  // namespace beurling
