#include "beurling/numsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "beurling/kernels.hpp"
#include "beurling/quadrature.hpp"

namespace beurling {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long double power_ld(double p, int v) {
  long double r = 1.0L;
  for (int i = 0; i < v; ++i) r *= p;
  return r;
}

double resolve_truncation(const PrimeSystem& ps, double truncation, const char* who) {
  const double X = truncation > 0.0 ? truncation : ps.x_max();
  if (!std::isfinite(X)) throw std::invalid_argument(std::string(who) + ": needs a finite truncation point");
  ps.require_in_range(X);
  return X;
}

std::complex<double> expm1_complex(std::complex<double> z) {
  if (std::abs(z) < 1e-3) return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0))));
  return std::exp(z) - 1.0;
}

/// Bound on sum_{p > X} sum_v p^{-v sigma} / v from pi(u) <= C u / log(u+1) + 2.
double euler_log_tail(double C, double X, double sigma) {
  const double head = sigma * C * std::pow(X, 1.0 - sigma) / ((sigma - 1.0) * std::log(X + 1.0)) + 2.0 * std::pow(X, -sigma);
  return head / (1.0 - std::pow(X, -sigma));
}

}  // namespace

// ---- semigroup enumeration -------------------------------------------------

IntegerStream::IntegerStream(const PrimeSystem& ps, double x) : ps_(&ps), x_(x) {
  ps.require_in_range(x);
  arena_.push_back({1.0L, 0.0, kNoParent, 0, 0, true});
}

bool IntegerStream::precedes(std::uint32_t a, std::uint32_t b) const {
  if (arena_[a].value != arena_[b].value) return arena_[a].value < arena_[b].value;
  std::vector<std::uint32_t> sa, sb;
  for (std::uint32_t n = a; arena_[n].parent != kNoParent; n = arena_[n].parent) sa.push_back(arena_[n].index);
  for (std::uint32_t n = b; arena_[n].parent != kNoParent; n = arena_[n].parent) sb.push_back(arena_[n].index);
  return std::lexicographical_compare(sa.rbegin(), sa.rend(), sb.rbegin(), sb.rend());
}

void IntegerStream::sift_up(std::size_t pos) {
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!precedes(heap_[pos], heap_[parent])) break;
    std::swap(heap_[pos], heap_[parent]);
    pos = parent;
  }
}

void IntegerStream::sift_down(std::size_t pos) {
  for (;;) {
    const std::size_t l = 2 * pos + 1;
    if (l >= heap_.size()) break;
    std::size_t best = l;
    if (l + 1 < heap_.size() && precedes(heap_[l + 1], heap_[l])) best = l + 1;
    if (!precedes(heap_[best], heap_[pos])) break;
    std::swap(heap_[pos], heap_[best]);
    pos = best;
  }
}

void IntegerStream::push(std::uint32_t id) {
  heap_.push_back(id);
  sift_up(heap_.size() - 1);
}

bool IntegerStream::next(GenInteger& out) {
  const auto primes = ps_->primes();
  const auto logs = ps_->log_primes();
  std::uint32_t id;
  if (root_pending_) {
    root_pending_ = false;
    if (x_ < 1.0L) return false;
    id = 0;
    if (!primes.empty() && primes[0] <= x_) {
      arena_.push_back({static_cast<long double>(primes[0]), logs[0], 0, 0, 1, true});
      push(static_cast<std::uint32_t>(arena_.size() - 1));
    }
  } else {
    if (heap_.empty()) return false;
    id = heap_.front();
    heap_.front() = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) sift_down(0);

    const Node node = arena_[id];
    // First child: repeat the largest prime.
    const long double child = node.value * primes[node.index];
    if (child <= x_) {
      arena_.push_back({child, node.log_value + logs[node.index], id, node.index, node.omega + 1, false});
      push(static_cast<std::uint32_t>(arena_.size() - 1));
    }
    // Sibling: replace the largest prime by the next one.
    const std::uint32_t next_index = node.index + 1;
    if (next_index < primes.size()) {
      const Node& parent = arena_[node.parent];
      const long double sibling = parent.value * primes[next_index];
      if (sibling <= x_) {
        arena_.push_back({sibling, parent.log_value + logs[next_index], node.parent, next_index, node.omega,
                          parent.squarefree});
        push(static_cast<std::uint32_t>(arena_.size() - 1));
      }
    }
  }
  const Node& n = arena_[id];
  out = {n.value, n.log_value, n.omega, n.squarefree};
  last_ = id;
  return true;
}

std::vector<std::uint32_t> IntegerStream::factor_indices() const {
  std::vector<std::uint32_t> seq;
  if (last_ == kNoParent) return seq;
  for (std::uint32_t n = last_; arena_[n].parent != kNoParent; n = arena_[n].parent) seq.push_back(arena_[n].index);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

std::vector<GenInteger> generate_integers(const PrimeSystem& ps, double x) {
  std::vector<GenInteger> out;
  IntegerStream stream(ps, x);
  GenInteger g;
  while (stream.next(g)) out.push_back(g);
  return out;
}

// ---- counting functions ------------------------------------------------------

std::size_t pi_count(const PrimeSystem& ps, double x) {
  ps.require_in_range(x);
  const auto p = ps.primes();
  return static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), x) - p.begin());
}

std::size_t prime_power_count(const PrimeSystem& ps, double x, int v) {
  if (v == 1) return pi_count(ps, x);
  ps.require_in_range(x);
  if (!(x >= 1.0)) return 0;
  const auto p = ps.primes();
  const double root = std::exp(std::log(x) / v);
  auto k = static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), root) - p.begin());
  while (k > 0 && power_ld(p[k - 1], v) > x) --k;
  while (k < p.size() && power_ld(p[k], v) <= x) ++k;
  return k;
}

double riemann_pi(const PrimeSystem& ps, double x) {
  ps.require_in_range(x);
  double total = 0.0;
  for (int v = 1;; ++v) {
    const std::size_t count = prime_power_count(ps, x, v);
    if (count == 0) break;
    total += static_cast<double>(count) / v;
  }
  return total;
}

std::int64_t N_count(const PrimeSystem& ps, double x) {
  std::int64_t n = 0;
  IntegerStream stream(ps, x);
  GenInteger g;
  while (stream.next(g)) ++n;
  return n;
}

std::int64_t M_sum(const PrimeSystem& ps, double x) {
  std::int64_t m = 0;
  IntegerStream stream(ps, x);
  GenInteger g;
  while (stream.next(g)) m += g.mu();
  return m;
}

std::int64_t L_sum(const PrimeSystem& ps, double x) {
  std::int64_t l = 0;
  IntegerStream stream(ps, x);
  GenInteger g;
  while (stream.next(g)) l += g.lambda();
  return l;
}

CountingCache::CountingCache(const PrimeSystem& ps) : ps_(&ps) {}

const CountingCache::Prefix& CountingCache::ensure(double x) const {
  std::lock_guard lock(mutex_);
  if (prefix_ && prefix_->limit >= x) return *prefix_;
  double limit = std::pow(10.0, std::ceil(std::log10(std::max(x, 1.0))));
  limit = std::max(std::min(limit, ps_->x_max()), x);
  auto fresh = std::make_shared<Prefix>();
  fresh->limit = limit;
  IntegerStream stream(*ps_, limit);
  GenInteger g;
  Counts running;
  while (stream.next(g)) {
    running.N += 1;
    running.M += g.mu();
    running.L += g.lambda();
    fresh->values.push_back(g.value);
    fresh->running.push_back(running);
  }
  // Old prefixes are only replaced, never mutated, so references stay valid
  // for the lifetime of the cache.
  retired_.push_back(prefix_);
  prefix_ = std::move(fresh);
  return *prefix_;
}

CountingCache::Counts CountingCache::at(double x) const {
  ps_->require_in_range(x);
  if (x < 1.0) return {};
  const Prefix& p = ensure(x);
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(p.values.begin(), p.values.end(), static_cast<long double>(x)) - p.values.begin());
  return idx == 0 ? Counts{} : p.running[idx - 1];
}

std::vector<long double> CountingCache::values_upto(double x) const {
  ps_->require_in_range(x);
  if (x < 1.0) return {};
  const Prefix& p = ensure(x);
  const auto end = std::upper_bound(p.values.begin(), p.values.end(), static_cast<long double>(x));
  return {p.values.begin(), end};
}

std::vector<DensityPoint> density_estimate(const PrimeSystem& ps, double x_hi) {
  std::vector<DensityPoint> out;
  CountingCache cache(ps);
  for (double x = 10.0; x <= x_hi * (1.0 + 1e-12); x *= 10.0) {
    out.push_back({x, static_cast<double>(cache.N(x)) / x});
  }
  return out;
}

// ---- zeta --------------------------------------------------------------------

bool ZetaValue::certified() const { return std::isfinite(tail_bound); }

ZetaValue zeta_euler(const PrimeSystem& ps, std::complex<double> s) {
  const double sigma = s.real();
  ZetaValue z;
  z.s = s;
  z.truncation = ps.x_max();
  std::complex<double> log_sum = 0.0;
  for (double l : ps.log_primes()) log_sum -= std::log(1.0 - std::exp(-s * l));
  z.value = std::exp(log_sum);
  if (ps.meta().complete) {
    z.tail_bound = 0.0;
  } else if (sigma <= 1.0 || !(ps.meta().chebyshev_C > 0.0) || !std::isfinite(ps.x_max())) {
    z.tail_bound = kInf;
  } else {
    z.tail_bound = std::abs(z.value) * std::expm1(euler_log_tail(ps.meta().chebyshev_C, ps.x_max(), sigma));
  }
  return z;
}

ZetaValue zeta_dirichlet(const PrimeSystem& ps, std::complex<double> s, double truncation) {
  const double X = resolve_truncation(ps, truncation, "zeta_dirichlet");
  const double sigma = s.real();
  ZetaValue z;
  z.s = s;
  z.truncation = X;
  std::vector<double> logs;
  IntegerStream stream(ps, X);
  GenInteger g;
  while (stream.next(g)) logs.push_back(g.log_value);
  const std::vector<double> ones(logs.size(), 1.0);
  z.value = damped_phase_sum(logs, ones, sigma, s.imag());

  z.tail_bound = kInf;
  if (sigma > 1.0) {
    // sum_{n > X} n^{-sigma} <= X^{s0 - sigma} zeta_P(s0) for 1 < s0 < sigma.
    for (int k = 1; k < 32; ++k) {
      const double s0 = 1.0 + (sigma - 1.0) * k / 32.0;
      const ZetaValue e = zeta_euler(ps, s0);
      if (!e.certified()) break;
      const double full = e.value.real() + e.tail_bound;
      z.tail_bound = std::min(z.tail_bound, std::pow(X, s0 - sigma) * full);
    }
  }
  return z;
}

std::complex<double> log_integral_difference(std::complex<double> a, std::complex<double> b, double L) {
  if (!(L > 0.0)) return 0.0;
  const std::complex<double> d = b - a;
  auto g = [&](double v) -> std::complex<double> { return std::exp(-a * v) * (-expm1_complex(-d * v)) / v; };
  const double freq = std::max(std::abs(a.imag()), std::abs(b.imag()));
  const double width = freq > 0.0 ? std::min(0.5, 1.0 / (4.0 * freq)) : 0.5;
  const auto r = adaptive_gk15(g, 0.0, L, 1e-13 * (1.0 + std::abs(std::exp(-a * L)) * L), width);
  if (!r.converged) throw std::runtime_error("log_integral_difference: quadrature did not converge");
  return r.value;
}

ZResult Z_eval(const PrimeSystem& ps, std::complex<double> s, double truncation) {
  const double sigma = s.real();
  if (!(sigma > 0.5)) throw std::domain_error("Z_eval: requires Re s > 1/2");
  const double X = resolve_truncation(ps, truncation, "Z_eval");
  const double L = std::log(X);
  std::vector<double> logs;
  std::vector<double> weights;
  const auto primes = ps.primes();
  const auto lp = ps.log_primes();
  for (std::size_t j = 0; j < primes.size() && primes[j] <= X; ++j) {
    long double power = primes[j];
    for (int v = 1; power <= X; ++v, power *= primes[j]) {
      logs.push_back(v * lp[j]);
      weights.push_back(1.0 / v);
    }
  }
  ZResult r;
  r.truncation = X;
  r.value = damped_phase_sum(logs, weights, sigma, s.imag()) - log_integral_difference(s - 1.0, s, L);
  r.li_tail = sigma > 1.0 ? std::exp(-(sigma - 1.0) * L) / ((sigma - 1.0) * L) : kInf;
  return r;
}

double z1_contribution(double p, double X) {
  double total = 0.0;
  long double power = p;
  for (int v = 1; power <= X; ++v, power *= p) total += static_cast<double>(1.0L / power) / v;
  return total;
}

}  // namespace beurling
