#include "gini/conjectures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "gini/means.hpp"
#include "gini/oracle.hpp"
#include "gini/parallel.hpp"
#include "gini/regions.hpp"
#include "gini/tolerances.hpp"

namespace gini {
namespace {

bool definitive(Status s) { return s != Status::Inconclusive; }

std::vector<double> endpoint_vector(double theta, int n, int low_count) {
  std::vector<double> x(static_cast<std::size_t>(n), 1.0);
  std::fill(x.begin(), x.begin() + low_count, theta);
  return x;
}

}  // namespace

std::vector<ComparisonQuad> sample_quads(const QuadSampler& sampler, const Interval& interval) {
  if (!(sampler.hi > sampler.lo)) throw DomainError("sampler requires lo < hi");
  std::mt19937_64 rng(sampler.seed);
  std::uniform_real_distribution<double> dist(sampler.lo, sampler.hi);
  std::vector<ComparisonQuad> out;
  for (std::size_t draw = 0; draw < sampler.max_draws && out.size() < sampler.count; ++draw) {
    ComparisonQuad quad;
    quad.lower.p = dist(rng);
    quad.lower.q = dist(rng);
    quad.upper.p = dist(rng);
    quad.upper.q = dist(rng);
    if (sampler.filter) {
      if (in_gamma2(quad, interval).status != Status::Member) continue;
      if (in_gamma_inf(quad, interval).status != Status::NonMember) continue;
    }
    out.push_back(quad);
  }
  return out;
}

Verdict conjecture1_verdict(const ComparisonQuad& quad, const Interval& interval, int n) {
  const double theta = interval.theta();
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("conjecture 1 requires a compact interval");
  if (n < 3) throw DomainError("conjecture 1 requires n >= 3");
  Verdict v;
  if (quad.reflexive()) {
    v.status = Status::Member;
    v.margin = 0.0;
    v.failed_condition = "reflexive";
    return v;
  }

  // Evaluated on the canonical interval [theta, 1]; homogeneity carries the
  // result to [a, b].
  struct Cond {
    const char* id;
    double lhs;
    double rhs;
    int low_count;
  };
  const std::vector<double> low = endpoint_vector(theta, n, n - 1);
  const std::vector<double> high = endpoint_vector(theta, n, 1);
  const std::array<Cond, 3> conds{{
      {"sum", quad.lower.p + quad.lower.q, quad.upper.p + quad.upper.q, 0},
      {"endpoint_low", gini_mean(quad.lower, low), gini_mean(quad.upper, low), n - 1},
      {"endpoint_high", gini_mean(quad.lower, high), gini_mean(quad.upper, high), 1},
  }};

  const Cond* boundary = nullptr;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const Cond& c : conds) {
    const double margin = c.rhs - c.lhs;
    switch (tol::compare_le(c.lhs, c.rhs)) {
      case tol::Cmp::Fails:
        v.status = Status::NonMember;
        v.failed_condition = c.id;
        v.margin = margin;
        if (c.low_count > 0) {
          v.witness = endpoint_vector(theta, n, c.low_count);
          place_in_interval(*v.witness, interval);
        }
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

ConjectureReport run_conjecture1_sweep(const Interval& interval, int n, const QuadSampler& sampler,
                                       const SolverBudget& budget, int threads) {
  const std::vector<ComparisonQuad> quads = sample_quads(sampler, interval);
  struct Outcome {
    Verdict conj;
    GammaNVerdict solver;
  };
  std::vector<Outcome> results(quads.size());
  parallel_for(quads.size(), threads, [&](std::size_t i) {
    results[i].conj = conjecture1_verdict(quads[i], interval, n);
    results[i].solver = decide_gamma_n(quads[i], interval, n, budget);
  });

  ConjectureReport report;
  report.conjecture_id = "C1";
  report.quads_tested = static_cast<int>(quads.size());
  for (std::size_t i = 0; i < quads.size(); ++i) {
    const Verdict& c = results[i].conj;
    const GammaNVerdict& s = results[i].solver;

    // A failed endpoint condition is a direct witness, so the solver must
    // report NonMember with exactly that vector.
    if (c.status == Status::NonMember && c.witness) {
      if (s.status != Status::NonMember || !s.witness || *s.witness != *c.witness) ++report.necessity_failures;
    }

    if (!definitive(c.status) || !definitive(s.status)) {
      ++report.inconclusive;
    } else if (c.status == s.status) {
      ++report.agree;
    } else {
      Disagreement d;
      d.quad = quads[i];
      d.conjecture = c.status;
      d.solver = s.status;
      if (s.status == Status::NonMember) {
        d.witness = s.witness;
        d.oracle_confirms = s.witness && is_violation(quads[i], *s.witness);
        d.note = "solver found a violation the conjectured conditions miss";
      } else {
        d.witness = c.witness;
        d.oracle_confirms = c.witness && is_violation(quads[i], *c.witness);
        d.note = "conjectured condition '" + c.failed_condition + "' fails but solver reports Member";
      }
      report.disagree.push_back(std::move(d));
    }
  }
  return report;
}

M2Entry conjectureM2_check(const ComparisonQuad& quad, int n, double box_L, int resolution) {
  if (!(box_L > 0.0 && box_L < 1.0)) throw DomainError("box requires 0 < L < 1");
  M2Entry e;
  e.quad = quad;
  const Interval reals = Interval::positive_reals();
  e.gamma_inf = in_gamma_inf(quad, reals).status;

  const auto cands = enumerate_interior_stationary(quad, n, box_L, 1.0 / box_L);
  bool boundary = false;
  double worst = 0.0;
  for (const KktCandidate& c : cands) {
    if (c.values.size() < 2) continue;
    ++e.stationary_points;
    const std::vector<double> u = c.expanded();
    const double g = gini_mean(quad.upper, u);
    const tol::Cmp cmp = tol::compare_le(1.0, g);
    if (cmp == tol::Cmp::Fails) {
      ++e.violating;
      // G_{r,s}(u) = 1 on the feasible set, so u itself violates the comparison.
      if (!compare_means(quad, u).violated) e.necessity_ok = false;
      if (!e.witness || 1.0 - g > worst) {
        worst = 1.0 - g;
        e.witness = u;
      }
    } else if (cmp == tol::Cmp::Boundary) {
      boundary = true;
    }
  }
  if (e.gamma_inf == Status::Member && e.violating > 0) e.necessity_ok = false;

  if (e.stationary_points == 0) {
    e.vacuous = true;
    e.verdict = Status::Inconclusive;
  } else if (e.violating > 0) {
    e.verdict = Status::NonMember;
  } else {
    e.verdict = boundary ? Status::Inconclusive : Status::Member;
  }

  if (e.gamma_inf == Status::Member) {
    e.reference = Status::Member;
  } else if (in_gamma2(quad, reals).status == Status::NonMember) {
    e.reference = Status::NonMember;
  } else {
    GridSpec spec;
    spec.interval = Interval(box_L, 1.0 / box_L);
    spec.n = n;
    spec.resolution = resolution;
    if (auto w = grid_refute(quad, spec)) {
      e.reference = Status::NonMember;
      if (!e.witness) e.witness = std::move(w);
    } else {
      e.reference = Status::Member;
    }
  }
  return e;
}

ConjectureReport run_conjectureM2_sweep(int n, double box_L, const QuadSampler& sampler, int threads,
                                        std::vector<M2Entry>* entries) {
  const std::vector<ComparisonQuad> quads = sample_quads(sampler, Interval::positive_reals());
  std::vector<M2Entry> results(quads.size());
  parallel_for(quads.size(), threads,
                       [&](std::size_t i) { results[i] = conjectureM2_check(quads[i], n, box_L); });

  ConjectureReport report;
  report.conjecture_id = "M2";
  report.quads_tested = static_cast<int>(quads.size());
  for (const M2Entry& e : results) {
    if (!e.necessity_ok) ++report.necessity_failures;
    if (e.vacuous) ++report.vacuous;
    if (!definitive(e.verdict) || !definitive(e.reference)) {
      ++report.inconclusive;
    } else if (e.verdict == e.reference) {
      ++report.agree;
    } else {
      Disagreement d;
      d.quad = e.quad;
      d.conjecture = e.verdict;
      d.solver = e.reference;
      d.witness = e.witness;
      d.oracle_confirms = e.witness && is_violation(e.quad, *e.witness);
      d.note = e.verdict == Status::Member ? "no violating stationary point, but the reference refutes"
                                           : "violating stationary point, but the reference finds none";
      report.disagree.push_back(std::move(d));
    }
  }
  if (entries) *entries = std::move(results);
  return report;
}

}  // namespace gini
