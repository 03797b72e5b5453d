#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "gini/conjectures.hpp"
#include "gini/solver.hpp"
#include "gini/types.hpp"

namespace gini::cli {

using nlohmann::json;

/// Finite numbers as numbers, infinities as the strings "inf" / "-inf".
json number(double v);
double parse_number(const json& j);

json to_json(const ComparisonQuad& quad);
ComparisonQuad quad_from_json(const json& j);
json to_json(const std::optional<std::vector<double>>& v);
json to_json(const ConjectureReport& report);
json to_json(const M2Entry& entry);

/// Tolerances and solver budget in effect, surfaced in every record.
json diagnostics(const SolverBudget& budget, int threads);

}  // namespace gini::cli
