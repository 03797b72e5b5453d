#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gini/types.hpp"

namespace gini {

/// Work limits of the constrained minimizer.
struct SolverBudget {
  int seeds = 64;           // local descents started from the best lattice points
  int grid_per_axis = 16;   // lattice points per free coordinate
  int max_iters = 200;      // iterations per local descent
  double box_L = 1e-4;      // search box [L, 1/L]^n used when theta = 0
  std::uint64_t rng_seed = 0;
};

/// The constrained problem
///   minimize sum_i chi_{p,q}(u_i)
///   subject to sum_i chi_{r,s}(u_i) = 0,  theta * max(u) <= min(u).
struct FeasibleSpec {
  ComparisonQuad quad;
  int n = 3;
  double theta = 0.5;
};

enum class KktCase { MA1, MA2, MA3 };

std::string_view to_string(KktCase c);

/// Stationary point of the constrained problem, stored by distinct values.
///
/// MA1: interior point, chi'_{p,q}(v) + rho chi'_{r,s}(v) = 0 at every value.
/// MA2: theta * max = min with the sign pattern >= 0 at the minimum, = 0 at
///      interior values, <= 0 at the maximum.
/// MA3: as MA2 for rho chi'_{r,s} alone, rho != 0.
struct KktCandidate {
  std::vector<double> values;      // sorted, distinct
  std::vector<int> multiplicities; // sum to n
  double rho = 0.0;
  KktCase case_tag = KktCase::MA1;
  double objective = 0.0;          // sum_i mult_i chi_{p,q}(value_i)

  std::vector<double> expanded() const;
};

struct GammaNVerdict {
  Status status = Status::Inconclusive;
  double min_objective = 0.0;
  std::vector<double> argmin;                  // feasible u attaining min_objective
  std::optional<std::vector<double>> witness;  // sample vector in [theta, 1]^n violating the comparison
  int candidates_examined = 0;
  std::string decided_by;                      // which route settled the verdict
  int kkt_candidates = 0;
  int ma3_candidates = 0;
  bool ma3_changed_verdict = false;
};

/// Globally minimizes the objective over the feasible set by multi-start
/// projected descent merged with KKT candidates, then applies the decision
/// rule: NonMember if some feasible point has objective < -tau_dec and its
/// rescaled witness violates the comparison, Member if none does (theta > 0
/// only), Inconclusive otherwise. theta = 0 searches the box of budget.box_L.
/// Throws SolverError when the budget yields no feasible evaluation.
GammaNVerdict minimize_cep(const FeasibleSpec& spec, const SolverBudget& budget = {});

/// Stationary candidates of the constrained problem for theta > 0.
std::vector<KktCandidate> enumerate_kkt(const FeasibleSpec& spec);

/// Interior (MA1-type) stationary points with values in [lo, hi] and no ratio
/// constraint.
std::vector<KktCandidate> enumerate_interior_stationary(const ComparisonQuad& quad, int n,
                                                        double lo, double hi);

/// Re-checks a candidate's feasibility and its case's stationarity and sign
/// conditions through chi and chi_prime. theta = 0 skips the ratio condition.
bool verify_kkt(const KktCandidate& candidate, const ComparisonQuad& quad, int n, double theta);

/// Upper bound on distinct values of an interior stationary point, from the
/// number of generalized-polynomial terms of u chi'_{p,q}(u) + rho u chi'_{r,s}(u).
int interior_value_cap(const ComparisonQuad& quad);

/// Decides membership of quad in Gamma_n(interval) for n >= 2.
///
/// n = 2 uses the closed form (optionally cross-checked by the minimizer).
/// n >= 3 applies, in order: boundary two-level vectors as direct witnesses,
/// the Gamma_2 necessary condition, the Gamma_inf sufficient condition, and
/// finally minimize_cep on the canonical interval.
GammaNVerdict decide_gamma_n(const ComparisonQuad& quad, const Interval& interval, int n,
                             const SolverBudget& budget = {}, bool cross_check = false);

}  // namespace gini
