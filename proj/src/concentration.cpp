#include "beurling/concentration.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <vector>

#include "beurling/parallel.hpp"
#include "beurling/rng.hpp"

namespace beurling {

double solve_u0() {
  auto f = [](double u) { return std::exp(u) - 1.0 - u - u * u; };
  auto df = [](double u) { return std::exp(u) - 1.0 - 2.0 * u; };
  double lo = 1.0, hi = 3.0;
  double u = 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double fu = f(u);
    if (fu == 0.0) return u;
    if (fu < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    double next = u - fu / df(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < 1e-15) return next;
    u = next;
  }
  return u;
}

TailRegime tail_regime(double sigma2, double v) {
  return v <= solve_u0() * sigma2 ? TailRegime::gaussian : TailRegime::linear;
}

double tail_bound(double sigma2, double v) {
  const double u0 = solve_u0();
  if (v <= u0 * sigma2) return std::min(1.0, std::exp(-v * v / (4.0 * sigma2)));
  return std::min(1.0, std::exp(-u0 * v / 4.0));
}

double VariableModel::variance() const {
  switch (kind) {
    case Kind::rademacher:
      return 1.0;
    case Kind::sparse:
      return p * a * a;
    case Kind::two_point:
      return p * a * a / (1.0 - p);
  }
  return 0.0;
}

double VariableModel::mean() const {
  if (kind == Kind::two_point) return p * a + (1.0 - p) * (-p * a / (1.0 - p));
  return 0.0;
}

double VariableModel::max_abs() const {
  switch (kind) {
    case Kind::rademacher:
      return 1.0;
    case Kind::sparse:
      return std::abs(a);
    case Kind::two_point:
      return std::max(std::abs(a), std::abs(p * a / (1.0 - p)));
  }
  return 0.0;
}

std::string VariableModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::rademacher:
      os << "rademacher";
      break;
    case Kind::sparse:
      os << "sparse(a=" << a << ",p=" << p << ")";
      break;
    case Kind::two_point:
      os << "two_point(a=" << a << ",p=" << p << ")";
      break;
  }
  return os.str();
}

void VariableModel::validate() const {
  if (kind != Kind::rademacher && !(p > 0.0 && p <= 1.0)) throw ModelError("model " + describe() + ": p outside (0, 1]");
  if (kind == Kind::two_point && p == 1.0) throw ModelError("model " + describe() + ": degenerate two-point law");
  if (max_abs() > 2.0) throw ModelError("model " + describe() + ": |X| exceeds 2");
  if (std::abs(mean()) > 1e-12) throw ModelError("model " + describe() + ": mean is not zero");
}

double wilson_lower(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double center = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return std::max(0.0, center - half);
}

KolmogorovReport kolmogorov_check(const VariableModel& model, std::size_t terms, double v, std::size_t trials,
                                  std::uint64_t seed, unsigned threads) {
  model.validate();
  KolmogorovReport r;
  r.terms = terms;
  r.sigma2 = model.variance() * static_cast<double>(terms);
  r.v = v;
  r.regime = tail_regime(r.sigma2, v);
  r.bound = tail_bound(r.sigma2, v);
  r.trials = trials;

  const KeyedRng rng(seed, StreamTag::monte_carlo);
  const double minus = model.kind == VariableModel::Kind::two_point ? -model.p * model.a / (1.0 - model.p) : 0.0;
  // Trial i reads blocks (i, 0), (i, 1), ...; a block holds 128 bits or four 32-bit uniforms.
  auto trial_sum = [&](std::uint64_t i) {
    double s = 0.0;
    if (model.kind == VariableModel::Kind::rademacher) {
      long ones = 0;
      std::size_t left = terms;
      for (std::uint32_t draw = 0; left > 0; ++draw) {
        for (std::uint32_t word : rng.block(i, draw)) {
          const std::size_t take = std::min<std::size_t>(left, 32);
          const std::uint32_t mask = take == 32 ? 0xFFFFFFFFu : ((1u << take) - 1u);
          ones += std::popcount(word & mask);
          left -= take;
          if (left == 0) break;
        }
      }
      return 2.0 * static_cast<double>(ones) - static_cast<double>(terms);
    }
    std::size_t done = 0;
    for (std::uint32_t draw = 0; done < terms; ++draw) {
      for (std::uint32_t word : rng.block(i, draw)) {
        const double u = (static_cast<double>(word) + 0.5) * 0x1.0p-32;
        if (model.kind == VariableModel::Kind::sparse) {
          if (u < 0.5 * model.p) {
            s += model.a;
          } else if (u < model.p) {
            s -= model.a;
          }
        } else {
          s += u < model.p ? model.a : minus;
        }
        if (++done == terms) break;
      }
    }
    return s;
  };

  const unsigned workers = resolve_threads(threads);
  std::vector<std::size_t> hits(workers, 0);
  const std::size_t chunk = (trials + workers - 1) / std::max(workers, 1u);
  parallel_chunks(workers, workers, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        if (trial_sum(i) >= v - 1e-9) ++hits[w];
      }
    }
  });
  for (std::size_t h : hits) r.hits += h;
  r.empirical = trials ? static_cast<double>(r.hits) / static_cast<double>(trials) : 0.0;
  r.radius = r.empirical - wilson_lower(r.hits, trials);
  return r;
}

}  // namespace beurling
