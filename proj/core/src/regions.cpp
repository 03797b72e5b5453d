#include "gini/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gini/means.hpp"
#include "gini/oracle.hpp"
#include "gini/tolerances.hpp"

namespace gini {
namespace {

struct Condition {
  const char* id;
  double lhs;
  double rhs;
};

// Combines banded conditions: any definitive failure wins, then any
// boundary case, otherwise membership.
template <std::size_t N>
Verdict combine(const std::array<Condition, N>& conds) {
  Verdict v;
  const Condition* boundary = nullptr;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const Condition& c : conds) {
    const double margin = c.rhs - c.lhs;
    switch (tol::compare_le(c.lhs, c.rhs)) {
      case tol::Cmp::Fails:
        v.status = Status::NonMember;
        v.failed_condition = c.id;
        v.margin = margin;
        return v;
      case tol::Cmp::Boundary:
        if (!boundary || std::abs(margin) < std::abs(boundary->rhs - boundary->lhs)) boundary = &c;
        break;
      case tol::Cmp::Holds:
        if (margin < min_margin) {
          min_margin = margin;
          v.failed_condition = c.id;
        }
        break;
    }
  }
  if (boundary) {
    v.status = Status::Inconclusive;
    v.failed_condition = boundary->id;
    v.margin = boundary->rhs - boundary->lhs;
    return v;
  }
  v.status = Status::Member;
  v.margin = min_margin;
  return v;
}

Verdict reflexive_member() {
  Verdict v;
  v.status = Status::Member;
  v.margin = 0.0;
  v.failed_condition = "reflexive";
  return v;
}

// Ratios tried when the interval is unbounded: Gamma_n((0,inf)) is contained
// in Gamma_n(I) for every I, so a witness on any [theta', 1] is a witness on (0, inf).
constexpr std::array<double, 5> kUnboundedLadder{0.5, 1e-2, 1e-4, 1e-8, 1e-16};

template <class Search>
std::optional<std::vector<double>> search_witness(double theta, Search&& search) {
  if (theta > 0.0) return search(theta);
  for (double t : kUnboundedLadder)
    if (auto w = search(t)) return w;
  return std::nullopt;
}

void place_in(Verdict& v, const Interval& interval) {
  if (v.witness) place_in_interval(*v.witness, interval);
}

}  // namespace

void place_in_interval(std::vector<double>& witness, const Interval& interval) {
  if (witness.empty()) return;
  double factor = 1.0;
  if (std::isfinite(interval.b()))
    factor = interval.b();
  else if (interval.a() > 0.0)
    factor = interval.a() / *std::min_element(witness.begin(), witness.end());
  if (factor != 1.0)
    for (double& x : witness) x *= factor;
}

Interval canonicalize(const Interval& interval) {
  const double theta = interval.theta();
  if (theta == 0.0) return Interval::positive_reals();
  if (!(theta < 1.0)) throw DomainError("interval is numerically degenerate");
  return {theta, 1.0};
}

Verdict in_gamma2(const ComparisonQuad& quad, const Interval& interval) {
  if (quad.reflexive()) return reflexive_member();
  const auto [r, s] = quad.lower;
  const auto [p, q] = quad.upper;
  const double theta = interval.theta();

  Verdict v;
  if (theta == 0.0) {
    v = combine(std::array<Condition, 3>{{
        {"sum", r + s, p + q},
        {"lambda", lambda_fn(r, s), lambda_fn(p, q)},
        {"mu", mu_fn(r, s), mu_fn(p, q)},
    }});
  } else {
    const std::array<double, 2> ends{theta, 1.0};
    v = combine(std::array<Condition, 2>{{
        {"sum", r + s, p + q},
        {"endpoint_mean", gini_mean(quad.lower, ends), gini_mean(quad.upper, ends)},
    }});
    if (v.status == Status::NonMember && v.failed_condition == std::string("endpoint_mean")) {
      v.witness = std::vector<double>(ends.begin(), ends.end());
      place_in(v, interval);
      return v;
    }
  }
  if (v.status == Status::NonMember)
    v.witness = search_witness(theta, [&](double t) { return pair_refute(quad, t); });
  place_in(v, interval);
  return v;
}

Verdict in_gamma_inf(const ComparisonQuad& quad, const Interval& interval) {
  if (quad.reflexive()) return reflexive_member();
  const auto [r, s] = quad.lower;
  const auto [p, q] = quad.upper;
  const double theta = interval.theta();

  Verdict v;
  if (theta == 0.0) {
    v = combine(std::array<Condition, 2>{{
        {"min", std::min(r, s), std::min(p, q)},
        {"max", std::max(r, s), std::max(p, q)},
    }});
  } else {
    v = combine(std::array<Condition, 2>{{
        {"chi_theta", chi(quad.lower, theta), chi(quad.upper, theta)},
        {"chi_inv_theta", chi(quad.lower, 1.0 / theta), chi(quad.upper, 1.0 / theta)},
    }});
  }
  if (v.status == Status::NonMember)
    v.witness = search_witness(theta, [&](double t) { return two_level_refute(quad, t); });
  place_in(v, interval);
  return v;
}

}  // namespace gini
