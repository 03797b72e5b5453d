#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gini/solver.hpp"
#include "gini/types.hpp"

namespace gini {

/// Random comparison quads with parameters uniform in [lo, hi]^4. With
/// `filter` set, only quads definitively in Gamma_2(I) and definitively
/// outside Gamma_inf(I) are kept.
struct QuadSampler {
  std::size_t count = 100;
  std::uint64_t seed = 0;
  double lo = -4.0;
  double hi = 4.0;
  bool filter = true;
  std::size_t max_draws = 1000000;
};

/// Draws up to sampler.count quads; fewer when max_draws runs out first.
std::vector<ComparisonQuad> sample_quads(const QuadSampler& sampler, const Interval& interval);

/// Conjectured closed form of Gamma_n([a, b]):
///   r+s <= p+q,
///   G_{r,s}(a,...,a,b) <= G_{p,q}(a,...,a,b)   ("endpoint_low", n-1 copies of a),
///   G_{r,s}(a,b,...,b) <= G_{p,q}(a,b,...,b)   ("endpoint_high", n-1 copies of b).
/// A failed endpoint condition carries its endpoint vector as witness.
Verdict conjecture1_verdict(const ComparisonQuad& quad, const Interval& interval, int n);

struct Disagreement {
  ComparisonQuad quad;
  Status conjecture = Status::Inconclusive;
  Status solver = Status::Inconclusive;
  std::optional<std::vector<double>> witness;
  bool oracle_confirms = false;  // direct evaluation at the witness confirms the NonMember side
  std::string note;
};

struct ConjectureReport {
  std::string conjecture_id;  // "C1" or "M2"
  int quads_tested = 0;
  int agree = 0;
  std::vector<Disagreement> disagree;
  int inconclusive = 0;
  int vacuous = 0;             // M2 only; counted within inconclusive
  int necessity_failures = 0;  // conjectured NonMember whose endpoint witness the solver does not reproduce
};

ConjectureReport run_conjecture1_sweep(const Interval& interval, int n, const QuadSampler& sampler,
                                       const SolverBudget& budget = {}, int threads = 1);

/// Interior stationary points of the theta = 0 problem inside [L, 1/L]^n and
/// the verdict they imply, next to a reference verdict.
struct M2Entry {
  ComparisonQuad quad;
  int stationary_points = 0;   // with at least two distinct values
  int violating = 0;           // stationary u with G_{p,q}(u) < 1
  Status verdict = Status::Inconclusive;
  bool vacuous = false;        // no nontrivial stationary point in the box
  Status gamma_inf = Status::Inconclusive;
  Status reference = Status::Inconclusive;
  std::optional<std::vector<double>> witness;  // violating stationary point or grid witness
  bool necessity_ok = true;    // every violating stationary point re-verifies directly
};

/// Reference: Member when in Gamma_inf((0,inf)); NonMember when outside
/// Gamma_2((0,inf)) or when the grid on [L, 1/L]^n finds a violation; Member
/// otherwise (no violation found on the box).
M2Entry conjectureM2_check(const ComparisonQuad& quad, int n, double box_L, int resolution = 48);

ConjectureReport run_conjectureM2_sweep(int n, double box_L, const QuadSampler& sampler,
                                        int threads = 1, std::vector<M2Entry>* entries = nullptr);

}  // namespace gini
