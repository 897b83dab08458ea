#pragma once

// Analytics over a prime system: the generalized integers and their counting
// functions, the Moebius and Liouville sums, and the zeta function.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "beurling/prime_system.hpp"

namespace beurling {

/// One element of the semigroup generated by the primes.
struct GenInteger {
  long double value = 1.0L;
  double log_value = 0.0;
  int omega = 0;  // prime factors with multiplicity
  bool squarefree = true;

  int mu() const { return squarefree ? (omega % 2 == 0 ? 1 : -1) : 0; }
  int lambda() const { return omega % 2 == 0 ? 1 : -1; }
};

/// Non-decreasing stream of the generalized integers <= x, one element per
/// factorization (multiset of prime indices). Equal values are ordered
/// lexicographically by their sorted index sequences.
class IntegerStream {
 public:
  IntegerStream(const PrimeSystem& ps, double x);
  bool next(GenInteger& out);
  /// Sorted prime indices of the element last returned by next().
  std::vector<std::uint32_t> factor_indices() const;

 private:
  struct Node {
    long double value;
    double log_value;
    std::uint32_t parent;  // node index, kNoParent for the root
    std::uint32_t index;   // largest prime index used
    int omega;
    bool squarefree;
  };
  static constexpr std::uint32_t kNoParent = 0xFFFFFFFFu;

  bool precedes(std::uint32_t a, std::uint32_t b) const;
  void push(std::uint32_t id);
  void sift_up(std::size_t pos);
  void sift_down(std::size_t pos);

  const PrimeSystem* ps_;
  long double x_;
  std::vector<Node> arena_;
  std::vector<std::uint32_t> heap_;
  std::uint32_t last_ = kNoParent;
  bool root_pending_ = true;
};

std::vector<GenInteger> generate_integers(const PrimeSystem& ps, double x);

/// #{p_j <= x}. Throws std::out_of_range beyond x_max.
std::size_t pi_count(const PrimeSystem& ps, double x);
/// sum_v pi(x^{1/v}) / v, exact prime-power tests at the boundaries.
double riemann_pi(const PrimeSystem& ps, double x);
/// #{p_j : p_j^v <= x}.
std::size_t prime_power_count(const PrimeSystem& ps, double x, int v);

std::int64_t N_count(const PrimeSystem& ps, double x);
std::int64_t M_sum(const PrimeSystem& ps, double x);
std::int64_t L_sum(const PrimeSystem& ps, double x);

/// Prefix sums of N, M, L over enumerations extended to decade boundaries,
/// for repeated queries. Thread-safe.
class CountingCache {
 public:
  explicit CountingCache(const PrimeSystem& ps);
  struct Counts {
    std::int64_t N = 0;
    std::int64_t M = 0;
    std::int64_t L = 0;
  };
  Counts at(double x) const;
  std::int64_t N(double x) const { return at(x).N; }
  std::int64_t M(double x) const { return at(x).M; }
  std::int64_t L(double x) const { return at(x).L; }
  /// Values of the cached integers <= x, in stream order.
  std::vector<long double> values_upto(double x) const;

 private:
  struct Prefix {
    double limit = 0.0;
    std::vector<long double> values;
    std::vector<Counts> running;
  };
  const Prefix& ensure(double x) const;

  const PrimeSystem* ps_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const Prefix> prefix_;
  mutable std::vector<std::shared_ptr<const Prefix>> retired_;
};

// ---- zeta ------------------------------------------------------------------

struct ZetaValue {
  std::complex<double> s;
  std::complex<double> value;
  double truncation = 0.0;  // primes or integers <= truncation were used
  double tail_bound = 0.0;  // |zeta_P(s) - value| <= tail_bound; infinite if not certified
  bool certified() const;
};

/// prod_{p <= x_max} (1 - p^{-s})^{-1}. For sigma > 1 the tail bound uses
/// pi(u) <= C u / log(u+1) + 2 beyond x_max; zero for complete systems.
ZetaValue zeta_euler(const PrimeSystem& ps, std::complex<double> s);
/// sum_{n_k <= X} n_k^{-s}, X = x_max unless `truncation` is given (required
/// for systems with infinite x_max). Rankin bound for the tail.
ZetaValue zeta_dirichlet(const PrimeSystem& ps, std::complex<double> s, double truncation = 0.0);

struct ZResult {
  std::complex<double> value;
  double truncation = 0.0;
  /// |int_X^inf x^{-s} dLi| for sigma > 1, infinite otherwise.
  double li_tail = 0.0;
};

/// int_1^X x^{-s} d(Pi - Li)(x), X = x_max: the jump sum over prime powers
/// minus int_0^{log X} (e^{-(s-1)v} - e^{-sv}) / v dv. Throws
/// std::domain_error for sigma <= 1/2.
ZResult Z_eval(const PrimeSystem& ps, std::complex<double> s, double truncation = 0.0);

/// int_0^L (e^{-a v} - e^{-b v}) / v dv for complex a, b (adaptive Gauss-Kronrod).
std::complex<double> log_integral_difference(std::complex<double> a, std::complex<double> b, double L);

/// sum_{v : p^v <= X} p^{-v} / v, the share of one prime in Z(1).
double z1_contribution(double p, double X);

/// Integer density N(x)/x at decade points up to x_max.
struct DensityPoint {
  double x;
  double density;
};
std::vector<DensityPoint> density_estimate(const PrimeSystem& ps, double x_hi);

}  // namespace beurling
