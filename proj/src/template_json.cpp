#include "beurling/template_json.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "beurling/oscillating.hpp"

namespace beurling {
namespace {

using nlohmann::json;

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw std::invalid_argument(std::string("template: '") + key + "' must be a number");
  return obj.at(key).get<double>();
}

double required_number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw std::invalid_argument(std::string("template: missing '") + key + "'");
  return number(obj, key, 0.0);
}

std::vector<double> number_list(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array())
    throw std::invalid_argument(std::string("template: '") + key + "' must be an array of numbers");
  return obj.at(key).get<std::vector<double>>();
}

void append_atoms(const json& spec, std::vector<Atom>& atoms, double& truncated) {
  if (spec.is_array() && !spec.empty() && spec.front().is_array()) {
    for (const auto& pair : spec) {
      if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("template: atoms must be [y, alpha] pairs");
      atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return;
  }
  if (spec.is_array()) {
    for (const auto& rule : spec) append_atoms(rule, atoms, truncated);
    return;
  }
  if (!spec.is_object() || !spec.contains("rule")) throw std::invalid_argument("template: unrecognised atoms entry");
  const std::string rule = spec.at("rule").get<std::string>();
  if (rule == "integers") {
    const auto from = static_cast<long>(required_number(spec, "from"));
    const auto to = static_cast<long>(required_number(spec, "to"));
    const auto more = integer_atoms(from, to, required_number(spec, "mass"));
    atoms.insert(atoms.end(), more.begin(), more.end());
  } else if (rule == "accumulating") {
    const auto e = accumulating_atoms(required_number(spec, "start"), required_number(spec, "limit"),
                                      required_number(spec, "mass"), number(spec, "eps_mass", 1e-9));
    atoms.insert(atoms.end(), e.atoms.begin(), e.atoms.end());
    truncated += e.truncated_mass;
  } else {
    throw std::invalid_argument("template: unknown atom rule '" + rule + "'");
  }
}


std::shared_ptr<const ContinuousPart> continuous_for(const json& spec, const std::string& kind) {
  if (kind == "li") return std::make_shared<SmallLiPart>();
  if (kind == "Li") return std::make_shared<LogIntegralPart>();
  if (kind == "log") return std::make_shared<LogPart>();
  if (kind == "finite") return std::make_shared<FiniteMassPart>(required_number(spec, "mass"));
  if (kind == "oscillating") {
    const std::string variant = spec.value("variant", "pi_c");
    OscillationVariant v;
    if (variant == "pi_c") {
      v = OscillationVariant::small_pi;
    } else if (variant == "Pi_c") {
      v = OscillationVariant::big_pi;
    } else {
      throw std::invalid_argument("template: oscillating variant must be 'pi_c' or 'Pi_c'");
    }
    OscillationParams params;
    if (spec.contains("log_tau")) {
      params.log_tau = number_list(spec, "log_tau");
      params.a = number_list(spec, "a");
      params.nu = number_list(spec, "nu");
      if (spec.value("snap", false)) params.snap_to_continuity();
    } else {
      params = OscillationParams::defaults(number(spec, "tau0", 50.0),
                                           static_cast<std::size_t>(number(spec, "blocks", 4)));
    }
    return std::make_shared<OscillatingPart>(std::move(params), v);
  }
  return nullptr;
}

}  // namespace

std::vector<double> grid_points_from_json(const json& grid) {
  if (grid.contains("points")) return number_list(grid, "points");
  const std::string rule = grid.value("rule", "");
  if (rule == "log_gap") return log_gap_grid(number(grid, "c", 0.8), required_number(grid, "v_max"));
  if (rule == "log_shift")
    return log_shift_grid(number(grid, "k0", 10.0), static_cast<std::size_t>(required_number(grid, "count")));
  throw std::invalid_argument("template: unknown grid rule '" + rule + "'");
}

Template template_from_json(const json& input) {
  const json spec = input.is_string() ? json{{"kind", input.get<std::string>()}} : input;
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string())
    throw std::invalid_argument("template: document must be an object with a string 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  const std::string id = spec.dump();

  if (kind == "grid") {
    if (!spec.contains("base") || !spec.contains("grid")) throw std::invalid_argument("template: grid needs 'base' and 'grid'");
    const Template base = template_from_json(spec.at("base"));
    const auto v = grid_points_from_json(spec.at("grid"));
    const Template g = grid_template(base, v);
    return Template::atomic({g.atoms().begin(), g.atoms().end()}, id);
  }

  std::vector<Atom> atoms;
  double truncated = 0.0;
  if (spec.contains("atoms")) append_atoms(spec.at("atoms"), atoms, truncated);
  if (kind == "atoms") {
    if (atoms.empty()) throw std::invalid_argument("template: 'atoms' kind needs at least one atom");
    return Template::atomic(std::move(atoms), id, truncated);
  }
  auto part = continuous_for(spec, kind);
  if (!part) throw std::invalid_argument("template: unknown kind '" + kind + "'");
  return Template(std::move(part), std::move(atoms), id, truncated);
}

nlohmann::json parse_template_spec(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("template: empty specification");
  if (text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("template: cannot open " + text.substr(1));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return json::parse(buffer.str());
  }
  if (text.front() == '{' || text.front() == '[' || text.front() == '"') return json::parse(text);
  return json{{"kind", text}};
}

}  // namespace beurling
