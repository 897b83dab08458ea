#pragma once

// Template documents:
//
//   {"kind": "li" | "Li" | "log"}
//   {"kind": "finite", "mass": M}
//   {"kind": "oscillating", "variant": "pi_c" | "Pi_c", "tau0": 50, "blocks": 4}
//   {"kind": "oscillating", "variant": ..., "log_tau": [...], "a": [...], "nu": [...], "snap": false}
//   {"kind": "grid", "base": <template>, "grid": {"rule": "log_gap", "c": 0.8, "v_max": 1000}}
//                                        grid: {"rule": "log_shift", "k0": 10, "count": N} | {"points": [...]}
//   {"kind": "atoms", "atoms": <atoms>}
//
// Any continuous kind may also carry "atoms", giving a mixed template.
// <atoms> is [[y, alpha], ...], a rule object, or a list of rule objects:
//   {"rule": "integers", "from": 2, "to": 100, "mass": 0.5}
//   {"rule": "accumulating", "start": 2, "limit": 3, "mass": 1, "eps_mass": 1e-9}
// A bare string "li" is shorthand for {"kind": "li"}.

#include <string>
#include <vector>

#include "beurling/templates.hpp"
#include "json.hpp"

namespace beurling {

/// Builds a template; its id is the compact dump of `spec`.
/// Throws std::invalid_argument on malformed documents.
Template template_from_json(const nlohmann::json& spec);

/// Expands a "grid" object into its points v_1 < v_2 < ...
std::vector<double> grid_points_from_json(const nlohmann::json& grid);

/// Accepts a kind name ("li"), inline JSON text, or "@path" to a JSON file.
nlohmann::json parse_template_spec(const std::string& text);

}  // namespace beurling
