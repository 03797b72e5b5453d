#include "records.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gini/errors.hpp"
#include "gini/tolerances.hpp"

namespace gini::cli {

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

double parse_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw DomainError("expected a number or \"inf\"");
}

json to_json(const ComparisonQuad& quad) {
  return {{"r", quad.lower.p}, {"s", quad.lower.q}, {"p", quad.upper.p}, {"q", quad.upper.q}};
}

ComparisonQuad quad_from_json(const json& j) {
  return {{j.at("r").get<double>(), j.at("s").get<double>()}, {j.at("p").get<double>(), j.at("q").get<double>()}};
}

json to_json(const std::optional<std::vector<double>>& v) {
  if (!v) return nullptr;
  return *v;
}

json to_json(const ConjectureReport& report) {
  json disagree = json::array();
  for (const Disagreement& d : report.disagree) {
    disagree.push_back({
        {"quad", to_json(d.quad)},
        {"conjecture_verdict", std::string(to_string(d.conjecture))},
        {"solver_verdict", std::string(to_string(d.solver))},
        {"witness", to_json(d.witness)},
        {"oracle_confirms", d.oracle_confirms},
        {"note", d.note},
    });
  }
  return {
      {"conjecture_id", report.conjecture_id},
      {"quads_tested", report.quads_tested},
      {"agree", report.agree},
      {"disagree", disagree},
      {"inconclusive", report.inconclusive},
      {"vacuous", report.vacuous},
      {"necessity_failures", report.necessity_failures},
  };
}

json to_json(const M2Entry& e) {
  return {
      {"quad", to_json(e.quad)},
      {"stationary_points", e.stationary_points},
      {"violating", e.violating},
      {"verdict", std::string(to_string(e.verdict))},
      {"vacuous", e.vacuous},
      {"gamma_inf", std::string(to_string(e.gamma_inf))},
      {"reference", std::string(to_string(e.reference))},
      {"witness", to_json(e.witness)},
      {"necessity_ok", e.necessity_ok},
  };
}

json diagnostics(const SolverBudget& budget, int threads) {
  return {
      {"tolerances",
       {
           {"tau_sign_rel", tol::kSignRel},
           {"tau_cmp_rel", tol::kCmpRel},
           {"tau_refute", tol::kRefute},
           {"tol_eq_per_var", tol::kEqPerVar},
           {"tol_stat_base", tol::kStatBase},
           {"tau_dec_per_var", tol::kDecPerVar},
       }},
      {"budget",
       {
           {"seeds", budget.seeds},
           {"grid_per_axis", budget.grid_per_axis},
           {"max_iters", budget.max_iters},
           {"box_L", budget.box_L},
           {"rng_seed", budget.rng_seed},
       }},
      {"threads", threads},
  };
}

}  // namespace gini::cli
