#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace beurling {

struct SystemMeta {
  std::uint64_t seed = 0;
  std::string template_id;
  /// Construction cutoff; analytics refuse queries beyond it.
  double x_max = std::numeric_limits<double>::infinity();
  bool strictly_increasing = false;
  /// F(x) <= C x / log(x+1) certified up to x_max; 0 when unknown.
  double chebyshev_C = 0.0;
  /// The listed primes are the whole system (hand-built finite systems).
  bool complete = false;
  /// Compact JSON echo of the producing configuration, may be empty.
  std::string config;
};

/// Sorted multiset of generalized primes p_1 > 1 with construction metadata.
class PrimeSystem {
 public:
  PrimeSystem() = default;
  /// Sorts `primes`; throws std::invalid_argument if any p <= 1, is not
  /// finite, or exceeds meta.x_max.
  PrimeSystem(std::vector<double> primes, SystemMeta meta);

  /// A complete finite system, x_max = infinity.
  static PrimeSystem finite(std::vector<double> primes);

  std::span<const double> primes() const { return primes_; }
  std::span<const double> log_primes() const { return logs_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  const SystemMeta& meta() const { return meta_; }
  double x_max() const { return meta_.x_max; }

  /// Throws std::out_of_range when x > x_max.
  void require_in_range(double x) const;
  /// The k smallest primes as a complete system.
  PrimeSystem first(std::size_t k) const;

  bool operator==(const PrimeSystem& other) const { return primes_ == other.primes_; }

 private:
  std::vector<double> primes_;
  std::vector<double> logs_;
  SystemMeta meta_;
};

/// One JSON header line, then one prime per line with 17 significant digits.
void write_prime_system(std::ostream& out, const PrimeSystem& ps);
PrimeSystem read_prime_system(std::istream& in);
void save_prime_system(const std::string& path, const PrimeSystem& ps);
PrimeSystem load_prime_system(const std::string& path);

/// "%.17g" formatting used by every text export.
std::string format_g17(double value);

}  // namespace beurling
