#pragma once

// Prime-density templates F = F_c + F_d: a continuous part with density and
// quantile, plus a finite, sorted list of atoms (position, mass).

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace beurling {

struct Atom {
  double position;  // y_n > 1
  double mass;      // alpha_n > 0
};

/// Continuous part F_c of a template. Implementations are immutable and
/// must be safe to evaluate concurrently.
class ContinuousPart {
 public:
  virtual ~ContinuousPart() = default;

  /// F_c(x) for x >= 1, with F_c(1) = 0.
  virtual double eval(double x) const = 0;
  /// dF_c/dx.
  virtual double density(double x) const = 0;
  /// min{x : F_c(x) >= m}. The default brackets the root and runs a
  /// Newton iteration safeguarded by bisection (200 iterations max,
  /// 1e-12 relative interval tolerance).
  virtual double quantile(double m) const;
  /// F_c(infinity).
  virtual double total_mass() const { return std::numeric_limits<double>::infinity(); }
  /// Largest quadrature panel, in v = log u, that resolves the density near v.
  virtual double panel_width_cap(double /*v*/) const { return 0.25; }
  /// Points in (v_lo, v_hi), v = log u, where the density has a kink or jump.
  virtual std::vector<double> log_breakpoints(double /*v_lo*/, double /*v_hi*/) const { return {}; }
  virtual std::string id() const = 0;
};

inline constexpr int kQuantileMaxIterations = 200;
inline constexpr double kQuantileRelTol = 1e-12;

/// Generalized inverse of a non-decreasing F by safeguarded Newton on [lo, hi],
/// requires F(lo) < m <= F(hi).
double invert_monotone(const ContinuousPart& part, double m, double lo, double hi);

class LogPart final : public ContinuousPart {
 public:
  double eval(double x) const override;
  double density(double x) const override;
  double quantile(double m) const override;
  std::string id() const override { return "log"; }
};

/// F = li.
class SmallLiPart final : public ContinuousPart {
 public:
  double eval(double x) const override;
  double density(double x) const override;
  std::string id() const override { return "li"; }
};

/// F = Li.
class LogIntegralPart final : public ContinuousPart {
 public:
  double eval(double x) const override;
  double density(double x) const override;
  std::string id() const override { return "Li"; }
};

/// F(x) = M (1 - 1/x): finite total mass M, never attained.
class FiniteMassPart final : public ContinuousPart {
 public:
  explicit FiniteMassPart(double total);
  double eval(double x) const override;
  double density(double x) const override;
  double quantile(double m) const override;
  double total_mass() const override { return total_; }
  std::string id() const override;

 private:
  double total_;
};

class Template {
 public:
  /// Atoms are sorted, duplicates merged, zero masses dropped.
  /// `truncated_mass` records atom mass dropped by an enumeration rule.
  Template(std::shared_ptr<const ContinuousPart> continuous, std::vector<Atom> atoms, std::string id,
           double truncated_mass = 0.0);

  static Template continuous(std::shared_ptr<const ContinuousPart> part);
  static Template atomic(std::vector<Atom> atoms, std::string id, double truncated_mass = 0.0);

  double eval(double x) const { return continuous_eval(x) + discrete_eval(x); }
  /// F(x-).
  double eval_left(double x) const { return continuous_eval(x) + discrete_eval_left(x); }
  double continuous_eval(double x) const;
  double continuous_quantile(double m) const;
  double total_continuous_mass() const;
  /// F_d(x) = sum_{y_n <= x} alpha_n.
  double discrete_eval(double x) const;
  /// F_d(x-) = sum_{y_n < x} alpha_n.
  double discrete_eval_left(double x) const;

  bool has_continuous() const { return continuous_ != nullptr; }
  bool has_atoms() const { return !atoms_.empty(); }
  const ContinuousPart* continuous_part() const { return continuous_.get(); }
  std::span<const Atom> atoms() const { return atoms_; }
  /// Cumulative F_d after each atom, snapped to integers within 1e-9.
  std::span<const double> cumulative_atom_mass() const { return cumulative_; }
  /// Atoms with lo < y <= hi.
  std::span<const Atom> atoms_in(double lo, double hi) const;

  /// Constant C with F(x) <= C x / log(x+1) for 1 <= x <= x_hi, certified on a
  /// log grid using monotonicity of F and of x / log(x+1).
  double chebyshev_constant(double x_hi) const;

  const std::string& id() const { return id_; }
  double truncated_mass() const { return truncated_mass_; }

 private:
  std::shared_ptr<const ContinuousPart> continuous_;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::string id_;
  double truncated_mass_;
};

inline constexpr double kAtomSnapTolerance = 1e-9;

// ---- atom rules --------------------------------------------------------

/// Mass `mass` at each integer from..to.
std::vector<Atom> integer_atoms(long from, long to, double mass);

struct AtomEnumeration {
  std::vector<Atom> atoms;
  double truncated_mass = 0.0;
};

/// Atoms accumulating at `limit` from below: y_k = limit - (limit - start) 2^{-k},
/// mass total 2^{-k}, k >= 1; enumeration stops once the remaining mass is
/// below eps_mass.
AtomEnumeration accumulating_atoms(double start, double limit, double total, double eps_mass);

// ---- grid-supported measures -------------------------------------------

/// Purely atomic template with atoms (v_k, F(v_k) - F(v_{k-1})), v_0 = 1.
/// Throws std::invalid_argument if v is not strictly increasing, v_1 <= 1,
/// or base has atoms.
Template grid_template(const Template& base, std::span<const double> v);

/// v_k = log(k + k0), k = 1..count.
std::vector<double> log_shift_grid(double k0, std::size_t count);

/// v_0 = 1, v_k = v_{k-1} + c log(v_{k-1} + 1), up to the first v_k >= v_max.
std::vector<double> log_gap_grid(double c, double v_max);

struct DecadeMax {
  double decade_start;  // 10^d
  double max_ratio;
};

struct AdmissibilityReport {
  double sup_gap_ratio = 0.0;                 // sup (v_{k+1} - v_k) / log v_k
  std::vector<DecadeMax> gap_ratio_by_decade;  // decades in k
  struct TailPoint {
    double t;
    double h;      // log(t+1) log log(t+e)
    double sum;    // sum_{v_k >= h} (v_k - v_{k-1})^2 / (v_k log v_k)
    double ratio;  // sum / (log(t+1)/t)
  };
  std::vector<TailPoint> tail;
  std::vector<DecadeMax> tail_ratio_by_decade;  // decades in t
  double gap_growth = 0.0;
  double tail_growth = 0.0;
  bool gap_flag = false;
  bool tail_flag = false;
  bool admissible() const { return !gap_flag && !tail_flag; }
};

/// Empirical check of the two grid conditions. A flag is raised when the
/// largest later-decade maximum exceeds `growth_factor` times the first.
AdmissibilityReport check_admissible_grid(std::span<const double> v, std::span<const double> t_grid,
                                          double growth_factor = 10.0);

}  // namespace beurling
