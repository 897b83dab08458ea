#pragma once

// Randomized discretization of a template F = F_c + F_d into a prime system:
// one prime per unit of mass, sampled inside its quantile cell.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "beurling/prime_system.hpp"
#include "beurling/rng.hpp"
#include "beurling/templates.hpp"

namespace beurling {

/// Sampling failed for a specific cell.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::size_t cell) : std::runtime_error(what), cell_(cell) {}
  std::size_t cell() const { return cell_; }

 private:
  std::size_t cell_;
};

/// Atom masses do not fit the cell structure (negative end weight).
class TemplateInconsistency : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

enum class Branch { continuous, discrete };

struct Partition {
  Branch branch = Branch::continuous;
  /// q[0] = 1 < q[1] <= q[2] ...; cell j is (q[j-1], q[j]].
  std::vector<double> q;
  /// floor(total mass) + 1 when the branch has finite total mass.
  std::optional<double> j_max;

  std::size_t cells() const { return q.empty() ? 0 : q.size() - 1; }
};

inline constexpr double kDefaultEpsMass = 1e-9;

/// Cells whose right endpoint q_j <= x_max. Repeated discrete boundaries are
/// kept. No complete cell gives q = {1}.
Partition build_partition(const Template& tpl, Branch branch, double x_max, unsigned threads = 1);

struct DiscreteCellLaw {
  std::size_t cell = 0;
  struct Entry {
    double position;
    double probability;
  };
  /// gamma_{j-1} at q_{j-1}, atoms strictly inside, beta_j at q_j; zero
  /// probabilities are kept so the layout is fixed.
  std::vector<Entry> entries;
  double gamma_prev = 0.0;
  double beta = 0.0;
  bool degenerate = false;
};

/// Law of the prime of discrete cell j (1-based).
DiscreteCellLaw discrete_cell_law(const Template& tpl, const Partition& partition, std::size_t j,
                                  double eps_mass = kDefaultEpsMass);

/// quantile(j - 1 + u) clamped into (q_{j-1}, q_j]; u in (0, 1].
double sample_continuous_cell(const Template& tpl, const Partition& partition, std::size_t j, double u);
double sample_continuous_cell(const Template& tpl, const Partition& partition, std::size_t j, const KeyedRng& rng);

/// Inverse-CDF draw from the cell law; u in (0, 1].
double sample_discrete_cell(const DiscreteCellLaw& law, double u);
double sample_discrete_cell(const Template& tpl, const Partition& partition, std::size_t j, const KeyedRng& rng,
                            double eps_mass = kDefaultEpsMass);

struct DiscretizeOptions {
  unsigned threads = 1;
  double eps_mass = kDefaultEpsMass;
  std::string config;  // echoed into the system metadata
};

/// Deterministic in (template, seed, x_max).
PrimeSystem discretize(const Template& tpl, std::uint64_t seed, double x_max, const DiscretizeOptions& options = {});

// ---- Z(1) calibration ----------------------------------------------------

enum class CalibrationMode {
  remove,    // only remove primes >= anchor
  multiply,  // add copies of the smallest prime >= anchor
  adaptive,  // remove when Z(1) > 0, add a prime at the balancing position when Z(1) < 0
};

struct CalibrationOptions {
  double anchor = 2.0;
  std::size_t max_changes = 64;
  double tolerance = 1e-3;
  CalibrationMode mode = CalibrationMode::adaptive;
};

struct CalibrationResult {
  PrimeSystem system;
  double z_before = 0.0;
  double z_after = 0.0;
  std::vector<double> removed;
  std::vector<double> added;
  bool converged = false;
};

/// Changes finitely many primes so that the truncated Z(1) is within
/// `tolerance` of 0, or stops after max_changes.
CalibrationResult calibrate_z1(const PrimeSystem& ps, const CalibrationOptions& options = {});

}  // namespace beurling
