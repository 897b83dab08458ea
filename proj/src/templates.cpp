#include "beurling/templates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "beurling/special.hpp"

namespace beurling {

double invert_monotone(const ContinuousPart& part, double m, double lo, double hi) {
  double x = lo;
  double f = part.eval(lo) - m;
  for (int iter = 0; iter < kQuantileMaxIterations; ++iter) {
    const double d = part.density(x);
    double next = d > 0.0 ? x - f / d : std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(next) && std::abs(next - x) <= 0.25 * kQuantileRelTol * x) {
      // Newton has converged to rounding level around x
      return f >= 0.0 ? x : std::min(std::max(next, x), hi);
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    f = part.eval(x) - m;
    if (f >= 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (hi - lo <= kQuantileRelTol * hi) break;
  }
  return hi;
}

double ContinuousPart::quantile(double m) const {
  if (!(m > 0.0)) return 1.0;
  if (!(m < total_mass())) throw std::domain_error("quantile: mass exceeds total continuous mass");
  double lo = 1.0;
  double hi = 2.0;
  while (eval(hi) < m) {
    lo = hi;
    hi *= hi;
    if (!std::isfinite(hi)) throw std::domain_error("quantile: could not bracket mass " + std::to_string(m));
  }
  return invert_monotone(*this, m, lo, hi);
}

// ---- concrete continuous parts -------------------------------------------

double LogPart::eval(double x) const { return std::log(x); }
double LogPart::density(double x) const { return 1.0 / x; }
double LogPart::quantile(double m) const { return m > 0.0 ? std::exp(m) : 1.0; }

double SmallLiPart::eval(double x) const { return li_eval(x); }
double SmallLiPart::density(double x) const { return li_density(x); }

double LogIntegralPart::eval(double x) const { return Li_eval(x, 1e-15); }
double LogIntegralPart::density(double x) const { return Li_density(x); }

FiniteMassPart::FiniteMassPart(double total) : total_(total) {
  if (!(total > 0.0) || !std::isfinite(total)) throw std::invalid_argument("FiniteMassPart: total must be positive");
}
double FiniteMassPart::eval(double x) const { return total_ * (1.0 - 1.0 / x); }
double FiniteMassPart::density(double x) const { return total_ / (x * x); }
double FiniteMassPart::quantile(double m) const {
  if (!(m > 0.0)) return 1.0;
  if (!(m < total_)) throw std::domain_error("quantile: mass exceeds total continuous mass");
  return 1.0 / (1.0 - m / total_);
}
std::string FiniteMassPart::id() const {
  std::ostringstream os;
  os.precision(17);
  os << "finite(" << total_ << ")";
  return os.str();
}

// ---- Template ----------------------------------------------------------

Template::Template(std::shared_ptr<const ContinuousPart> continuous, std::vector<Atom> atoms, std::string id,
                   double truncated_mass)
    : continuous_(std::move(continuous)), id_(std::move(id)), truncated_mass_(truncated_mass) {
  for (const Atom& a : atoms) {
    if (!(a.position > 1.0) || !std::isfinite(a.position))
      throw std::invalid_argument("Template: atom positions must be finite and > 1");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw std::invalid_argument("Template: atom masses must be >= 0");
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.position < b.position; });
  for (const Atom& a : atoms) {
    if (a.mass == 0.0) continue;
    if (!atoms_.empty() && atoms_.back().position == a.position) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
  cumulative_.reserve(atoms_.size());
  long double running = 0.0L;
  for (const Atom& a : atoms_) {
    running += a.mass;
    const long double nearest = std::round(running);
    if (std::abs(running - nearest) <= kAtomSnapTolerance) running = nearest;
    cumulative_.push_back(static_cast<double>(running));
  }
}

Template Template::continuous(std::shared_ptr<const ContinuousPart> part) {
  if (!part) throw std::invalid_argument("Template::continuous: null part");
  std::string id = part->id();
  return Template(std::move(part), {}, std::move(id));
}

Template Template::atomic(std::vector<Atom> atoms, std::string id, double truncated_mass) {
  return Template(nullptr, std::move(atoms), std::move(id), truncated_mass);
}

double Template::continuous_eval(double x) const {
  if (!(x >= 1.0)) throw std::domain_error("Template: x must be >= 1");
  return continuous_ ? continuous_->eval(x) : 0.0;
}

double Template::continuous_quantile(double m) const {
  if (!continuous_) throw std::logic_error("Template has no continuous part");
  return continuous_->quantile(m);
}

double Template::total_continuous_mass() const { return continuous_ ? continuous_->total_mass() : 0.0; }

double Template::discrete_eval(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                   [](double value, const Atom& a) { return value < a.position; });
  const auto idx = static_cast<std::size_t>(it - atoms_.begin());
  return idx == 0 ? 0.0 : cumulative_[idx - 1];
}

double Template::discrete_eval_left(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, double value) { return a.position < value; });
  const auto idx = static_cast<std::size_t>(it - atoms_.begin());
  return idx == 0 ? 0.0 : cumulative_[idx - 1];
}

std::span<const Atom> Template::atoms_in(double lo, double hi) const {
  const auto first = std::upper_bound(atoms_.begin(), atoms_.end(), lo,
                                      [](double value, const Atom& a) { return value < a.position; });
  const auto last = std::upper_bound(first, atoms_.end(), hi,
                                     [](double value, const Atom& a) { return value < a.position; });
  return {first, last};
}

double Template::chebyshev_constant(double x_hi) const {
  if (!(x_hi > 1.0)) return 0.0;
  constexpr double kStep = 1.0 / 64.0;
  const double v_hi = std::log(x_hi);
  double bound = 0.0;
  double x_prev = 1.0;
  for (double v = kStep;; v += kStep) {
    const double x = v >= v_hi ? x_hi : std::exp(v);
    bound = std::max(bound, eval(x) * std::log(x_prev + 1.0) / x_prev);
    if (x == x_hi) break;
    x_prev = x;
  }
  return bound;
}

// ---- atom rules --------------------------------------------------------

std::vector<Atom> integer_atoms(long from, long to, double mass) {
  if (from < 2) throw std::invalid_argument("integer_atoms: positions must exceed 1");
  std::vector<Atom> atoms;
  for (long n = from; n <= to; ++n) atoms.push_back({static_cast<double>(n), mass});
  return atoms;
}

AtomEnumeration accumulating_atoms(double start, double limit, double total, double eps_mass) {
  if (!(start > 1.0) || !(limit > start)) throw std::invalid_argument("accumulating_atoms: need 1 < start < limit");
  if (!(eps_mass > 0.0)) throw std::invalid_argument("accumulating_atoms: eps_mass must be positive");
  AtomEnumeration out;
  double remaining = total;
  double scale = 0.5;
  while (remaining >= eps_mass) {
    const double y = limit - (limit - start) * scale;
    if (!(y < limit)) break;  // positions no longer resolvable in double
    out.atoms.push_back({y, total * scale});
    remaining -= total * scale;
    scale *= 0.5;
  }
  out.truncated_mass = std::max(remaining, 0.0);
  return out;
}

// ---- grids -------------------------------------------------------------

Template grid_template(const Template& base, std::span<const double> v) {
  if (base.has_atoms()) throw std::invalid_argument("grid_template: base must be purely continuous");
  if (v.empty()) throw std::invalid_argument("grid_template: empty grid");
  if (!(v.front() > 1.0)) throw std::invalid_argument("grid_template: v_1 must exceed 1");
  std::vector<Atom> atoms;
  atoms.reserve(v.size());
  double prev_v = 1.0;
  double prev_f = 0.0;
  for (double vk : v) {
    if (!(vk > prev_v)) throw std::invalid_argument("grid_template: grid must be strictly increasing");
    const double f = base.eval(vk);
    const double mass = f - prev_f;
    if (mass > 0.0) atoms.push_back({vk, mass});
    prev_v = vk;
    prev_f = f;
  }
  std::ostringstream id;
  id.precision(17);
  id << "grid(" << base.id() << ";n=" << v.size() << ";v1=" << v.front() << ";vK=" << v.back() << ")";
  return Template::atomic(std::move(atoms), id.str());
}

std::vector<double> log_shift_grid(double k0, std::size_t count) {
  if (!(std::log(1.0 + k0) > 1.0)) throw std::invalid_argument("log_shift_grid: need log(1 + k0) > 1");
  std::vector<double> v(count);
  for (std::size_t k = 1; k <= count; ++k) v[k - 1] = std::log(static_cast<double>(k) + k0);
  return v;
}

std::vector<double> log_gap_grid(double c, double v_max) {
  if (!(c > 0.0) || !(v_max > 1.0)) throw std::invalid_argument("log_gap_grid: need c > 0 and v_max > 1");
  std::vector<double> v;
  double current = 1.0;
  while (current < v_max) {
    current += c * std::log(current + 1.0);
    v.push_back(current);
  }
  return v;
}

namespace {

std::vector<DecadeMax> decade_maxima(const std::vector<std::pair<double, double>>& points) {
  std::vector<DecadeMax> out;
  for (const auto& [key, ratio] : points) {
    const double decade = std::pow(10.0, std::floor(std::log10(std::max(key, 1.0))));
    if (out.empty() || out.back().decade_start != decade) {
      out.push_back({decade, ratio});
    } else {
      out.back().max_ratio = std::max(out.back().max_ratio, ratio);
    }
  }
  return out;
}

double growth_over_first(const std::vector<DecadeMax>& decades) {
  if (decades.size() < 2) return 0.0;
  double later = 0.0;
  for (std::size_t i = 1; i < decades.size(); ++i) later = std::max(later, decades[i].max_ratio);
  const double first = decades.front().max_ratio;
  if (first > 0.0) return later / first;
  return later > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

AdmissibilityReport check_admissible_grid(std::span<const double> v, std::span<const double> t_grid,
                                          double growth_factor) {
  AdmissibilityReport report;
  if (v.empty()) return report;
  double prev = 1.0;
  for (double vk : v) {
    if (!(vk > prev)) throw std::invalid_argument("check_admissible_grid: grid must be increasing from v_0 = 1");
    prev = vk;
  }

  std::vector<std::pair<double, double>> gap_points;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double ratio = (v[k + 1] - v[k]) / std::log(v[k]);
    report.sup_gap_ratio = std::max(report.sup_gap_ratio, ratio);
    gap_points.emplace_back(static_cast<double>(k + 1), ratio);
  }
  report.gap_ratio_by_decade = decade_maxima(gap_points);
  report.gap_growth = growth_over_first(report.gap_ratio_by_decade);
  report.gap_flag = report.gap_growth > growth_factor;

  // suffix[k] = sum_{i >= k} (v_i - v_{i-1})^2 / (v_i log v_i)
  std::vector<double> suffix(v.size() + 1, 0.0);
  for (std::size_t k = v.size(); k-- > 0;) {
    const double gap = v[k] - (k == 0 ? 1.0 : v[k - 1]);
    suffix[k] = suffix[k + 1] + gap * gap / (v[k] * std::log(v[k]));
  }

  std::vector<double> ts(t_grid.begin(), t_grid.end());
  for (double& t : ts) t = std::abs(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::pair<double, double>> tail_points;
  for (double t : ts) {
    const double h = std::log(t + 1.0) * std::log(std::log(t + std::exp(1.0)));
    const auto first = std::lower_bound(v.begin(), v.end(), h);
    const double sum = suffix[static_cast<std::size_t>(first - v.begin())];
    const double scale = t > 0.0 ? std::log(t + 1.0) / t : 1.0;
    const double ratio = sum / scale;
    report.tail.push_back({t, h, sum, ratio});
    tail_points.emplace_back(t, ratio);
  }
  report.tail_ratio_by_decade = decade_maxima(tail_points);
  report.tail_growth = growth_over_first(report.tail_ratio_by_decade);
  report.tail_flag = report.tail_growth > growth_factor;
  return report;
}

}  // namespace beurling
