// beurling: construct generalized prime systems from density templates and
// check them.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage, config or IO error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beurling/concentration.hpp"
#include "beurling/discretizer.hpp"
#include "beurling/kernels.hpp"
#include "beurling/numsys.hpp"
#include "beurling/oscillating.hpp"
#include "beurling/prime_system.hpp"
#include "beurling/report_io.hpp"
#include "beurling/template_json.hpp"
#include "beurling/verify.hpp"
#include "json_config.hpp"

namespace fs = std::filesystem;
using beurling::Json;
using namespace beurling;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

/// Bad input that is not a verification outcome.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- shared helpers ---------------------------------------------------------

/// Options that never change a result are left out of the echo.
Json echo_config(const CLI::App& cmd) {
  Json options = Json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "out" || name == "out-dir" || name == "config") continue;
    const auto& results = opt->results();
    if (results.empty()) {
      if (opt->get_default_str().empty()) continue;
      options[name] = opt->get_default_str();
    } else if (results.size() == 1 && opt->get_items_expected_max() <= 1) {
      options[name] = results.front();
    } else {
      options[name] = results;
    }
  }
  return Json{{"command", cmd.get_name()}, {"options", options}};
}

struct LoadedTemplate {
  nlohmann::json spec;
  Template tpl;
};

LoadedTemplate load_template(const std::string& text) {
  try {
    auto spec = parse_template_spec(text);
    Template tpl = template_from_json(spec);
    return {std::move(spec), std::move(tpl)};
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("template: ") + e.what());
  }
}

/// Plain li without atoms: the only template for which Pi - Li is meaningful.
bool is_plain_li(const nlohmann::json& spec) {
  return spec.is_object() && spec.value("kind", "") == "li" && !spec.contains("atoms");
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
  if (!out) throw UsageError("write failed for " + path.string());
}

/// "-" is stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

PrimeSystem load_system(const std::string& path) {
  try {
    return load_prime_system(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- checks shared by verify and report ------------------------------------

struct CheckSettings {
  double x_lo = 10.0;
  int per_decade = 8;
  std::vector<double> ts = default_t_grid();
  double tol = 1e-8;
  double max_slope = 0.05;
  double count_bound = 2.0;
  unsigned threads = 1;
};

struct CheckOutcome {
  Json summary;
  bool pass = true;
};

/// Per-system checks, then the envelope and gap trends pooled across systems.
/// Deviation records go to `csv_dir` when it is set.
CheckOutcome run_checks(const std::vector<PrimeSystem>& systems, const LoadedTemplate& lt, const CheckSettings& s,
                        const std::optional<fs::path>& csv_dir) {
  CheckOutcome out;
  const bool gap = is_plain_li(lt.spec);
  std::vector<std::vector<DecadeMax>> envelope_decades, gap_decades;
  Json per_system = Json::array();
  for (const PrimeSystem& ps : systems) {
    const double x_max = ps.x_max();
    if (!std::isfinite(x_max)) throw UsageError("prime file has no finite x_max");
    if (!(x_max > s.x_lo)) throw UsageError("x_max must exceed --x-lo");
    Json entry{{"seed", ps.meta().seed}, {"count", ps.size()}, {"x_max", x_max}};

    const CellCheck cells = cell_containment(ps, lt.tpl, s.threads);
    entry["cells"] = {{"expected", cells.expected},
                      {"found", cells.found},
                      {"matched", cells.matched},
                      {"pass", cells.ok()}};
    if (!cells.ok() && cells.unmatched_hi > 0.0) entry["cells"]["first_empty"] = {cells.unmatched_lo, cells.unmatched_hi};
    out.pass = out.pass && cells.ok();

    const CountDeviation count = count_deviation(ps, lt.tpl, x_max);
    const bool count_ok = count.sup <= s.count_bound + 1e-9;
    entry["count_deviation"] = {{"sup", count.sup}, {"at", count.at}, {"left_limit", count.left_limit},
                                {"bound", s.count_bound}, {"pass", count_ok}};
    out.pass = out.pass && count_ok;

    const auto xs = log_grid(s.x_lo, x_max, s.per_decade);
    SweepOptions sweep_options;
    sweep_options.tol = s.tol;
    sweep_options.threads = s.threads;
    const DeviationReport sweep = deviation_sweep(ps, lt.tpl, xs, s.ts, sweep_options);
    entry["envelope"] = to_json(sweep);
    envelope_decades.push_back(sweep.decade_max);
    if (csv_dir) {
      std::ostringstream csv;
      write_deviation_csv(csv, sweep);
      write_file(*csv_dir / ("deviation_" + std::to_string(ps.meta().seed) + ".csv"), csv.str());
    }

    if (gap && x_max > 16.0) {
      const GapReport g = pi_Li_gap_check(ps, 16.0, x_max, s.per_decade);
      entry["gap"] = to_json(g);
      gap_decades.push_back(g.decade_max);
      const bool ceiling_ok = g.worst_ceiling_excess <= 1e-9;
      entry["gap"]["ceiling_pass"] = ceiling_ok;
      out.pass = out.pass && ceiling_ok;
    }

    const ZetaValue euler = zeta_euler(ps, 2.0);
    const ZetaValue dirichlet = zeta_dirichlet(ps, 2.0);
    const double diff = std::abs(euler.value - dirichlet.value);
    const bool zeta_ok = diff <= euler.tail_bound + dirichlet.tail_bound;
    entry["zeta2"] = {{"euler", to_json(euler)}, {"dirichlet", to_json(dirichlet)}, {"difference", diff},
                      {"pass", zeta_ok}};
    out.pass = out.pass && zeta_ok;
    per_system.push_back(std::move(entry));
  }

  const TrendSummary envelope_trend = pool_trend(envelope_decades, s.max_slope);
  out.summary["systems"] = std::move(per_system);
  out.summary["envelope_trend"] = to_json(envelope_trend);
  out.pass = out.pass && envelope_trend.pass();
  if (!gap_decades.empty()) {
    const TrendSummary gap_trend = pool_trend(gap_decades, s.max_slope);
    out.summary["gap_trend"] = to_json(gap_trend);
    out.pass = out.pass && gap_trend.pass();
  }
  out.summary["pass"] = out.pass;
  return out;
}

void add_check_options(CLI::App* cmd, CheckSettings& s) {
  cmd->add_option("--x-lo", s.x_lo, "Lower end of the x grid")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--per-decade", s.per_decade, "Grid points per decade")->capture_default_str()->check(CLI::Range(1, 1000));
  cmd->add_option("--t", s.ts, "Frequencies t for the exponential sums")->capture_default_str();
  cmd->add_option("--tol", s.tol, "Quadrature tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--max-slope", s.max_slope, "Largest accepted log-log trend slope")->capture_default_str();
  cmd->add_option("--count-bound", s.count_bound, "Bound on sup |pi - F|")->capture_default_str()->check(CLI::PositiveNumber);
}

std::vector<double> analytics_grid(const PrimeSystem& ps, double x_lo, double x_hi, int per_decade) {
  if (!std::isfinite(x_hi)) throw UsageError("--x-hi is required for systems without a finite x_max");
  if (!(x_hi > x_lo)) throw UsageError("--x-hi must exceed --x-lo");
  ps.require_in_range(x_hi);
  return log_grid(x_lo, x_hi, per_decade);
}

// ---- subcommands --------------------------------------------------------------

struct Common {
  unsigned threads = 1;
};

int cmd_template_check(const std::string& text, double x_max, const Common& common, const std::string& out_path) {
  const LoadedTemplate lt = load_template(text);
  const Template& tpl = lt.tpl;
  bool pass = true;
  Json report{{"id", tpl.id()}, {"x_max", x_max}, {"F", tpl.eval(x_max)}};
  if (tpl.has_continuous()) report["continuous_mass"] = number(tpl.total_continuous_mass());
  report["atoms"] = tpl.atoms().size();
  report["truncated_atom_mass"] = tpl.truncated_mass();
  report["chebyshev_C"] = number(tpl.chebyshev_constant(x_max));

  const Partition cont = build_partition(tpl, Branch::continuous, x_max, common.threads);
  const Partition disc = build_partition(tpl, Branch::discrete, x_max);
  report["cells"] = {{"continuous", cont.cells()}, {"discrete", disc.cells()}};

  Json laws{{"consistent", true}};
  for (std::size_t j = 1; j <= disc.cells(); ++j) {
    try {
      discrete_cell_law(tpl, disc, j);
    } catch (const TemplateInconsistency& e) {
      laws = {{"consistent", false}, {"cell", e.cell()}, {"message", e.what()}};
      pass = false;
      break;
    }
  }
  report["discrete_laws"] = laws;

  if (const auto* osc = dynamic_cast<const OscillatingPart*>(tpl.continuous_part())) {
    const auto v = osc->params().validate();
    report["oscillation"] = {{"increasing", v.increasing}, {"disjoint", v.disjoint}, {"a_floor", v.a_floor},
                             {"nu_range", v.nu_range},     {"nonempty", v.nonempty}, {"continuous", v.continuous},
                             {"messages", v.messages}};
    pass = pass && v.ok();
  }
  if (lt.spec.is_object() && lt.spec.value("kind", "") == "grid") {
    const auto points = grid_points_from_json(lt.spec.at("grid"));
    const auto t_grid = log_grid(10.0, 1e6, 4);
    const AdmissibilityReport adm = check_admissible_grid(points, t_grid);
    report["grid"] = to_json(adm);
    pass = pass && adm.admissible();
  }
  report["pass"] = pass;
  emit(out_path, dump(report));
  return pass ? kExitPass : kExitFail;
}

struct DiscretizeArgs {
  std::string tpl;
  std::uint64_t seed = 0;
  double x_max = 0.0;
  double eps_mass = kDefaultEpsMass;
  std::string calibrate = "none";
  std::string out;
};

PrimeSystem build_system(const LoadedTemplate& lt, std::uint64_t seed, double x_max, double eps_mass,
                         const std::string& calibrate, const Json& echo, unsigned threads) {
  DiscretizeOptions options;
  options.threads = threads;
  options.eps_mass = eps_mass;
  options.config = echo.dump();
  PrimeSystem ps = discretize(lt.tpl, seed, x_max, options);
  if (calibrate == "none") return ps;
  CalibrationOptions c;
  c.mode = calibrate == "remove" ? CalibrationMode::remove
           : calibrate == "multiply" ? CalibrationMode::multiply
                                     : CalibrationMode::adaptive;
  CalibrationResult r = calibrate_z1(ps, c);
  if (!r.converged) std::cerr << "warning: Z(1) calibration stopped at " << r.z_after << "\n";
  return std::move(r.system);
}

int cmd_discretize(const DiscretizeArgs& a, const Json& echo, const Common& common) {
  const LoadedTemplate lt = load_template(a.tpl);
  const PrimeSystem ps = build_system(lt, a.seed, a.x_max, a.eps_mass, a.calibrate, echo, common.threads);
  std::ostringstream text;
  write_prime_system(text, ps);
  emit(a.out, text.str());
  if (a.out != "-") std::cerr << ps.size() << " primes written to " << a.out << "\n";
  return kExitPass;
}

struct AnalyzeArgs {
  std::string primes;
  std::vector<double> xs;
  double x_lo = 1.0;
  double x_hi = 0.0;
  int per_decade = 8;
  std::string out = "-";
};

int cmd_analyze(const AnalyzeArgs& a) {
  const PrimeSystem ps = load_system(a.primes);
  std::vector<double> xs = a.xs;
  if (xs.empty()) xs = analytics_grid(ps, a.x_lo, a.x_hi > 0.0 ? a.x_hi : ps.x_max(), a.per_decade);
  for (double x : xs) ps.require_in_range(x);
  std::ostringstream csv;
  write_analytics_csv(csv, ps, xs);
  emit(a.out, csv.str());
  return kExitPass;
}

struct ZetaArgs {
  std::string primes;
  std::vector<double> sigma{2.0};
  std::vector<double> t{0.0};
  std::vector<std::string> kinds{"euler", "dirichlet", "Z"};
  double truncation = 0.0;
  std::string out = "-";
};

int cmd_zeta(const ZetaArgs& a) {
  const PrimeSystem ps = load_system(a.primes);
  Json rows = Json::array();
  for (double sigma : a.sigma) {
    for (double t : a.t) {
      const std::complex<double> s(sigma, t);
      for (const std::string& kind : a.kinds) {
        Json row;
        if (kind == "euler") {
          row = to_json(zeta_euler(ps, s));
        } else if (kind == "dirichlet") {
          row = to_json(zeta_dirichlet(ps, s, a.truncation));
        } else {
          if (!(sigma > 0.5)) throw UsageError("Z needs sigma > 1/2");
          row = to_json(Z_eval(ps, s, a.truncation), s);
        }
        Json tagged{{"kind", kind}};
        tagged.update(row);
        rows.push_back(std::move(tagged));
      }
    }
  }
  emit(a.out, dump(rows));
  return kExitPass;
}

struct VerifyArgs {
  std::vector<std::string> primes;
  std::string tpl;
  std::string check;
  std::string out_dir;
  // tail check
  std::string model = "rademacher";
  double a = 1.0;
  double p = 1.0;
  std::size_t terms = 100;
  std::vector<double> v{10.0, 20.0, 30.0};
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

int check_u0() {
  const double u0 = solve_u0();
  std::cout << std::setprecision(15) << u0 << "\n";
  const double residual = std::exp(u0) - 1.0 - u0 - u0 * u0;
  return std::abs(residual) < 1e-10 ? kExitPass : kExitFail;
}

int check_tail(const VerifyArgs& a, const Common& common) {
  VariableModel model;
  if (a.model == "rademacher") {
    model = VariableModel::rademacher();
  } else if (a.model == "sparse") {
    model = VariableModel::sparse(a.a, a.p);
  } else {
    model = VariableModel::two_point(a.a, a.p);
  }
  try {
    model.validate();
  } catch (const ModelError& e) {
    throw UsageError(e.what());
  }
  Json rows = Json::array();
  bool pass = true;
  for (double v : a.v) {
    const auto r = kolmogorov_check(model, a.terms, v, a.trials, a.seed, common.threads);
    rows.push_back(to_json(r));
    pass = pass && r.pass();
  }
  Json report{{"model", model.describe()}, {"u0", solve_u0()}, {"checks", rows}, {"pass", pass}};
  std::cout << dump(report);
  return pass ? kExitPass : kExitFail;
}

int cmd_verify(const VerifyArgs& a, const CheckSettings& settings, const Json& echo, const Common& common) {
  if (a.check == "u0") return check_u0();
  if (a.check == "tail") return check_tail(a, common);
  if (a.primes.empty()) throw UsageError("verify needs --primes or --check");

  std::vector<PrimeSystem> systems;
  for (const auto& path : a.primes) systems.push_back(load_system(path));
  const std::string tpl_text = a.tpl.empty() ? systems.front().meta().template_id : a.tpl;
  if (tpl_text.empty()) throw UsageError("prime file has no template id; pass --template");
  const LoadedTemplate lt = load_template(tpl_text);

  std::optional<fs::path> dir;
  if (!a.out_dir.empty()) dir = fs::path(a.out_dir);
  CheckSettings s = settings;
  s.threads = common.threads;
  CheckOutcome outcome = run_checks(systems, lt, s, dir);
  outcome.summary["config"] = echo;
  const std::string text = dump(outcome.summary);
  if (dir) write_file(*dir / "summary.json", text);
  std::cout << (outcome.pass ? "PASS" : "FAIL") << "\n";
  if (!dir) std::cout << text;
  return outcome.pass ? kExitPass : kExitFail;
}

struct ReportArgs {
  std::string tpl = "li";
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double x_max = 1e5;
  double eps_mass = kDefaultEpsMass;
  std::string out_dir;
};

int cmd_report(const ReportArgs& a, const CheckSettings& settings, const Json& echo, const Common& common) {
  const LoadedTemplate lt = load_template(a.tpl);
  const fs::path dir(a.out_dir);
  std::vector<PrimeSystem> systems;
  for (std::uint64_t seed : a.seeds) {
    PrimeSystem ps = build_system(lt, seed, a.x_max, a.eps_mass, "none", echo, common.threads);
    const std::string tag = std::to_string(seed);
    std::ostringstream text;
    write_prime_system(text, ps);
    write_file(dir / ("primes_" + tag + ".txt"), text.str());
    std::ostringstream csv;
    write_analytics_csv(csv, ps, log_grid(2.0, a.x_max, settings.per_decade));
    write_file(dir / ("analytics_" + tag + ".csv"), csv.str());
    systems.push_back(std::move(ps));
  }
  CheckSettings s = settings;
  s.threads = common.threads;
  CheckOutcome outcome = run_checks(systems, lt, s, dir);
  outcome.summary["config"] = echo;
  write_file(dir / "report.json", dump(outcome.summary));
  std::cout << (outcome.pass ? "PASS" : "FAIL") << "\n";
  return outcome.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beurling generalized prime systems: random discretization and checks"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<cli::JsonOrTomlConfig>());
  app.set_config("--config", "", "TOML or JSON file; sections are subcommand names");

  Common common;
  app.add_option("--threads", common.threads, "Worker cap, 0 for all cores")->capture_default_str();
  std::string isa;
  app.add_option("--isa", isa, "Force the phase-sum kernel")->check(CLI::IsMember({"scalar", "avx2"}));

  std::string check_tpl;
  double check_x_max = 1e6;
  std::string check_out = "-";
  auto* tcheck = app.add_subcommand("template-check", "Validate a template and report its cell structure");
  tcheck->add_option("--template", check_tpl, "Name, inline JSON or @file")->required();
  tcheck->add_option("--x-max", check_x_max, "Construction cutoff")->capture_default_str()->check(CLI::PositiveNumber);
  tcheck->add_option("--out", check_out, "Output path, - for stdout")->capture_default_str();

  DiscretizeArgs disc;
  auto* discretize_cmd = app.add_subcommand("discretize", "Sample a prime system from a template");
  discretize_cmd->add_option("--template", disc.tpl, "Name, inline JSON or @file")->required();
  discretize_cmd->add_option("--seed", disc.seed, "Random seed")->capture_default_str();
  discretize_cmd->add_option("--x-max", disc.x_max, "Construction cutoff")->required()->check(CLI::PositiveNumber);
  discretize_cmd->add_option("--eps-mass", disc.eps_mass, "Mass tolerance for discrete cells")->capture_default_str();
  discretize_cmd->add_option("--calibrate", disc.calibrate, "Z(1) calibration")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "remove", "multiply", "adaptive"}));
  discretize_cmd->add_option("--out", disc.out, "Prime file, - for stdout")->required();

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "CSV of pi, Pi, N, M, L on an x grid");
  analyze_cmd->add_option("--primes", an.primes, "Prime file")->required();
  analyze_cmd->add_option("--x", an.xs, "Explicit x values");
  analyze_cmd->add_option("--x-lo", an.x_lo, "Grid start")->capture_default_str()->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--x-hi", an.x_hi, "Grid end, defaults to x_max");
  analyze_cmd->add_option("--per-decade", an.per_decade, "Grid points per decade")->capture_default_str()->check(CLI::Range(1, 1000));
  analyze_cmd->add_option("--out", an.out, "CSV path, - for stdout")->capture_default_str();

  ZetaArgs zt;
  auto* zeta_cmd = app.add_subcommand("zeta", "Truncated zeta values and Z(s)");
  zeta_cmd->add_option("--primes", zt.primes, "Prime file")->required();
  zeta_cmd->add_option("--sigma", zt.sigma, "Real parts")->capture_default_str();
  zeta_cmd->add_option("--t", zt.t, "Imaginary parts")->capture_default_str();
  zeta_cmd->add_option("--kind", zt.kinds, "euler, dirichlet, Z")
      ->capture_default_str()
      ->check(CLI::IsMember({"euler", "dirichlet", "Z"}));
  zeta_cmd->add_option("--truncation", zt.truncation, "Truncation point, default x_max")->capture_default_str();
  zeta_cmd->add_option("--out", zt.out, "JSON path, - for stdout")->capture_default_str();

  VerifyArgs ver;
  CheckSettings verify_settings;
  auto* verify_cmd = app.add_subcommand("verify", "Check prime files against their template");
  verify_cmd->add_option("--primes", ver.primes, "Prime files; several are pooled for the trend checks");
  verify_cmd->add_option("--template", ver.tpl, "Override the template recorded in the file");
  verify_cmd->add_option("--out-dir", ver.out_dir, "Directory for summary.json and deviation CSVs");
  verify_cmd->add_option("--check", ver.check, "Standalone check instead of a prime file")
      ->check(CLI::IsMember({"u0", "tail"}));
  verify_cmd->add_option("--model", ver.model, "tail: variable model")
      ->capture_default_str()
      ->check(CLI::IsMember({"rademacher", "sparse", "two_point"}));
  verify_cmd->add_option("--a", ver.a, "tail: model value")->capture_default_str();
  verify_cmd->add_option("--p", ver.p, "tail: model probability")->capture_default_str();
  verify_cmd->add_option("--terms", ver.terms, "tail: number of summands")->capture_default_str();
  verify_cmd->add_option("--v", ver.v, "tail: tail thresholds")->capture_default_str();
  verify_cmd->add_option("--trials", ver.trials, "tail: Monte Carlo trials")->capture_default_str();
  verify_cmd->add_option("--seed", ver.seed, "tail: seed")->capture_default_str();
  add_check_options(verify_cmd, verify_settings);

  ReportArgs rep;
  CheckSettings report_settings;
  auto* report_cmd = app.add_subcommand("report", "Discretize several seeds and write the full check report");
  report_cmd->add_option("--template", rep.tpl, "Name, inline JSON or @file")->capture_default_str();
  report_cmd->add_option("--seeds", rep.seeds, "Seeds")->capture_default_str();
  report_cmd->add_option("--x-max", rep.x_max, "Construction cutoff")->capture_default_str()->check(CLI::PositiveNumber);
  report_cmd->add_option("--eps-mass", rep.eps_mass, "Mass tolerance for discrete cells")->capture_default_str();
  report_cmd->add_option("--out-dir", rep.out_dir, "Output directory")->required();
  add_check_options(report_cmd, report_settings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (isa == "scalar") force_isa(Isa::scalar);
    if (isa == "avx2") {
      if (!avx2_available()) throw UsageError("AVX2 is not available on this machine");
      force_isa(Isa::avx2);
    }
    if (*tcheck) return cmd_template_check(check_tpl, check_x_max, common, check_out);
    if (*discretize_cmd) return cmd_discretize(disc, echo_config(*discretize_cmd), common);
    if (*analyze_cmd) return cmd_analyze(an);
    if (*zeta_cmd) return cmd_zeta(zt);
    if (*verify_cmd) return cmd_verify(ver, verify_settings, echo_config(*verify_cmd), common);
    if (*report_cmd) return cmd_report(rep, report_settings, echo_config(*report_cmd), common);
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
