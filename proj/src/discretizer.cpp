#include "beurling/discretizer.hpp"

#include <algorithm>
#include <cmath>

#include "beurling/numsys.hpp"
#include "beurling/parallel.hpp"
#include "json.hpp"

namespace beurling {
namespace {

Partition continuous_partition(const Template& tpl, double x_max, unsigned threads) {
  Partition part;
  part.branch = Branch::continuous;
  part.q.push_back(1.0);
  if (!tpl.has_continuous()) return part;
  const double total = tpl.total_continuous_mass();
  if (std::isfinite(total)) part.j_max = std::floor(total) + 1.0;

  const double mass = tpl.continuous_eval(x_max);
  auto cells = static_cast<std::size_t>(std::floor(mass + 1e-12 * std::max(1.0, mass)));
  if (std::isfinite(total) && static_cast<double>(cells) >= total) {
    cells = static_cast<std::size_t>(std::ceil(total) - 1.0);  // mass `total` is never attained
  }
  part.q.resize(cells + 1);
  parallel_chunks(cells, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin + 1; j <= end; ++j) {
      try {
        part.q[j] = tpl.continuous_quantile(static_cast<double>(j));
      } catch (const std::exception& e) {
        throw ConstructionError("cell " + std::to_string(j) + ": quantile failed: " + e.what(), j);
      }
    }
  });
  for (std::size_t j = 1; j <= cells; ++j) {
    if (!(part.q[j] > part.q[j - 1]))
      throw ConstructionError("cell " + std::to_string(j) + ": quantiles not increasing", j);
  }
  // Rounding can put the last boundary a hair beyond x_max.
  while (part.q.size() > 1 && part.q.back() > x_max) {
    if (part.q.back() <= x_max * (1.0 + 1e-12) && x_max > part.q[part.q.size() - 2]) {
      part.q.back() = x_max;
    } else {
      part.q.pop_back();
    }
  }
  return part;
}

Partition discrete_partition(const Template& tpl, double x_max) {
  Partition part;
  part.branch = Branch::discrete;
  part.q.push_back(1.0);
  if (!tpl.has_atoms()) return part;
  const auto atoms = tpl.atoms();
  const auto cumulative = tpl.cumulative_atom_mass();
  part.j_max = std::floor(cumulative.back()) + 1.0;
  const double reach = tpl.discrete_eval(x_max);
  std::size_t a = 0;
  for (double j = 1.0; j <= reach; j += 1.0) {
    while (cumulative[a] < j) ++a;
    part.q.push_back(atoms[a].position);
  }
  return part;
}

}  // namespace

Partition build_partition(const Template& tpl, Branch branch, double x_max, unsigned threads) {
  if (!(x_max > 1.0)) throw std::invalid_argument("build_partition: x_max must exceed 1");
  return branch == Branch::continuous ? continuous_partition(tpl, x_max, threads) : discrete_partition(tpl, x_max);
}

DiscreteCellLaw discrete_cell_law(const Template& tpl, const Partition& partition, std::size_t j, double eps_mass) {
  if (j == 0 || j > partition.cells()) throw std::out_of_range("discrete_cell_law: no cell " + std::to_string(j));
  DiscreteCellLaw law;
  law.cell = j;
  const double lo = partition.q[j - 1];
  const double hi = partition.q[j];
  if (lo == hi) {
    law.degenerate = true;
    law.beta = 1.0;
    law.entries.push_back({hi, 1.0});
    return law;
  }
  const auto below = static_cast<double>(j - 1);
  law.gamma_prev = j == 1 ? 0.0 : std::clamp(tpl.discrete_eval(lo) - below, 0.0, 1.0);
  law.entries.push_back({lo, law.gamma_prev});
  double inside = 0.0;
  for (const Atom& a : tpl.atoms_in(lo, hi)) {
    if (a.position == hi) break;
    law.entries.push_back({a.position, a.mass});
    inside += a.mass;
  }
  double beta = 1.0 - law.gamma_prev - inside;
  if (beta < -eps_mass) {
    throw TemplateInconsistency("cell " + std::to_string(j) + ": negative end weight " + std::to_string(beta), j);
  }
  law.beta = std::max(beta, 0.0);
  law.entries.push_back({hi, law.beta});
  return law;
}

double sample_continuous_cell(const Template& tpl, const Partition& partition, std::size_t j, double u) {
  if (j == 0 || j > partition.cells()) throw std::out_of_range("sample_continuous_cell: no cell " + std::to_string(j));
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("sample_continuous_cell: u must lie in (0, 1]");
  const double lo = partition.q[j - 1];
  const double hi = partition.q[j];
  if (u == 1.0) return hi;
  double x;
  try {
    x = tpl.continuous_quantile(static_cast<double>(j - 1) + u);
  } catch (const std::exception& e) {
    throw ConstructionError("cell " + std::to_string(j) + ": quantile failed: " + e.what(), j);
  }
  if (!std::isfinite(x)) throw ConstructionError("cell " + std::to_string(j) + ": non-finite sample", j);
  if (x > hi) return hi;
  if (x <= lo) return std::nextafter(lo, hi);
  return x;
}

double sample_continuous_cell(const Template& tpl, const Partition& partition, std::size_t j, const KeyedRng& rng) {
  return sample_continuous_cell(tpl, partition, j, rng.uniform_open_closed(j));
}

double sample_discrete_cell(const DiscreteCellLaw& law, double u) {
  if (law.degenerate) return law.entries.back().position;
  double total = 0.0;
  for (const auto& e : law.entries) total += e.probability;
  const double target = u * total;
  double running = 0.0;
  const DiscreteCellLaw::Entry* last_positive = nullptr;
  for (const auto& e : law.entries) {
    if (e.probability <= 0.0) continue;
    running += e.probability;
    last_positive = &e;
    if (target <= running) return e.position;
  }
  if (!last_positive) throw ConstructionError("cell " + std::to_string(law.cell) + ": empty law", law.cell);
  return last_positive->position;
}

double sample_discrete_cell(const Template& tpl, const Partition& partition, std::size_t j, const KeyedRng& rng,
                            double eps_mass) {
  return sample_discrete_cell(discrete_cell_law(tpl, partition, j, eps_mass), rng.uniform_open_closed(j));
}

PrimeSystem discretize(const Template& tpl, std::uint64_t seed, double x_max, const DiscretizeOptions& options) {
  const Partition cont = build_partition(tpl, Branch::continuous, x_max, options.threads);
  const Partition disc = build_partition(tpl, Branch::discrete, x_max);
  const KeyedRng cont_rng(seed, StreamTag::continuous_cell);
  const KeyedRng disc_rng(seed, StreamTag::discrete_cell);

  std::vector<double> primes(cont.cells() + disc.cells());
  parallel_chunks(cont.cells(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin + 1; j <= end; ++j) primes[j - 1] = sample_continuous_cell(tpl, cont, j, cont_rng);
  });
  for (std::size_t j = 1; j <= disc.cells(); ++j) {
    primes[cont.cells() + j - 1] = sample_discrete_cell(tpl, disc, j, disc_rng, options.eps_mass);
  }
  std::sort(primes.begin(), primes.end());

  SystemMeta meta;
  meta.seed = seed;
  meta.template_id = tpl.id();
  meta.x_max = x_max;
  meta.strictly_increasing = std::adjacent_find(primes.begin(), primes.end()) == primes.end();
  meta.chebyshev_C = tpl.chebyshev_constant(x_max);
  meta.config = options.config;
  return PrimeSystem(std::move(primes), std::move(meta));
}

// ---- Z(1) calibration ------------------------------------------------------

CalibrationResult calibrate_z1(const PrimeSystem& ps, const CalibrationOptions& options) {
  const double X = ps.x_max();
  if (!std::isfinite(X)) throw std::invalid_argument("calibrate_z1: system needs a finite x_max");
  std::vector<double> primes(ps.primes().begin(), ps.primes().end());
  CalibrationResult result;
  result.z_before = Z_eval(ps, 1.0).value.real();
  double z = result.z_before;

  const auto anchor_it = [&] { return std::lower_bound(primes.begin(), primes.end(), options.anchor); };
  for (std::size_t change = 0; change < options.max_changes && std::abs(z) > options.tolerance; ++change) {
    if (z > 0.0) {
      if (options.mode == CalibrationMode::multiply) break;
      // Largest single contribution that does not overshoot below -tolerance.
      auto it = anchor_it();
      while (it != primes.end() && z1_contribution(*it, X) > z + options.tolerance) ++it;
      if (it == primes.end()) break;
      z -= z1_contribution(*it, X);
      result.removed.push_back(*it);
      primes.erase(it);
    } else {
      if (options.mode == CalibrationMode::remove) break;
      double p;
      if (options.mode == CalibrationMode::multiply) {
        const auto it = anchor_it();
        if (it == primes.end() || z1_contribution(*it, X) > -z + options.tolerance) break;
        p = *it;
      } else {
        p = 1.0 / -std::expm1(z);
        if (!(p > 1.0) || p > X) break;
      }
      z += z1_contribution(p, X);
      result.added.push_back(p);
      primes.insert(std::upper_bound(primes.begin(), primes.end(), p), p);
    }
  }

  SystemMeta meta = ps.meta();
  meta.strictly_increasing = std::adjacent_find(primes.begin(), primes.end()) == primes.end();
  nlohmann::json echo = meta.config.empty() ? nlohmann::json::object() : nlohmann::json::parse(meta.config);
  echo["z1_calibration"] = {{"anchor", options.anchor},
                            {"removed", result.removed},
                            {"added", result.added},
                            {"tolerance", options.tolerance}};
  meta.config = echo.dump();
  result.system = PrimeSystem(std::move(primes), std::move(meta));
  result.z_after = Z_eval(result.system, 1.0).value.real();
  result.converged = std::abs(result.z_after) <= options.tolerance;
  return result;
}

}  // namespace beurling
