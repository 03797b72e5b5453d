#include "gini/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gini/errors.hpp"
#include "gini/means.hpp"
#include "gini/regions.hpp"
#include "gini/tolerances.hpp"
#include "summation.hpp"

namespace gini {
namespace {

// The feasible set is a cone section: every x with theta max(x) <= min(x)
// gives the feasible u = x / G_{r,s}(x). Fixing x_n = 1 and writing
// x_i = exp(z_i), z in [ln theta, 0]^{n-1}, parametrizes it exactly, so
// the equality constraint never has to be restored numerically.
struct Point {
  std::vector<double> z;
  std::vector<double> u;
  std::vector<double> grad;
  double f = 0.0;
};

constexpr std::size_t kLatticeCap = 100000;
constexpr double kArmijo = 1e-4;
constexpr int kHalvings = 40;

class Minimizer {
 public:
  Minimizer(const ComparisonQuad& quad, int n, double theta_eff)
      : quad_(quad), n_(n), dim_(n - 1), log_theta_(std::log(theta_eff)) {}

  std::optional<Point> evaluate(std::vector<double> z) const {
    Point pt;
    for (double& v : z) v = std::clamp(v, log_theta_, 0.0);
    std::vector<double> x(static_cast<std::size_t>(n_), 1.0);
    for (int i = 0; i < dim_; ++i) x[i] = std::exp(z[i]);
    try {
      const double g = gini_mean(quad_.lower, x);
      pt.u.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) pt.u[i] = x[i] / g;
      detail::CompensatedSum f;
      detail::CompensatedSum d_pq;
      detail::CompensatedSum d_rs;
      std::vector<double> cp(x.size());
      std::vector<double> cr(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = pt.u[i];
        f.add(chi(quad_.upper, u));
        cp[i] = chi_prime(quad_.upper, u);
        cr[i] = chi_prime(quad_.lower, u);
        d_pq.add(u * cp[i]);
        d_rs.add(u * cr[i]);
      }
      pt.f = f.value();
      const double rho = -d_pq.value() / d_rs.value();
      pt.grad.resize(static_cast<std::size_t>(dim_));
      for (int j = 0; j < dim_; ++j) pt.grad[j] = pt.u[j] * (cp[j] + rho * cr[j]);
    } catch (const DomainError&) {
      return std::nullopt;
    }
    if (!std::isfinite(pt.f)) return std::nullopt;
    for (double g : pt.grad)
      if (!std::isfinite(g)) return std::nullopt;
    pt.z = std::move(z);
    return pt;
  }

  // Projected gradient with Armijo backtracking and Barzilai-Borwein steps.
  Point descend(Point cur, int max_iters) const {
    double alpha = 1.0;
    for (int it = 0; it < max_iters; ++it) {
      std::optional<Point> next;
      double a = alpha;
      for (int h = 0; h <= kHalvings; ++h, a *= 0.5) {
        std::vector<double> z(cur.z);
        for (int j = 0; j < dim_; ++j) z[j] = std::clamp(z[j] - a * cur.grad[j], log_theta_, 0.0);
        double decrease = 0.0;
        for (int j = 0; j < dim_; ++j) decrease += cur.grad[j] * (z[j] - cur.z[j]);
        if (decrease >= 0.0) break;  // projected step vanished
        auto trial = evaluate(std::move(z));
        if (trial && trial->f <= cur.f + kArmijo * decrease) {
          next = std::move(trial);
          break;
        }
      }
      if (!next) break;

      double ss = 0.0;
      double sy = 0.0;
      double step_max = 0.0;
      for (int j = 0; j < dim_; ++j) {
        const double s = next->z[j] - cur.z[j];
        const double y = next->grad[j] - cur.grad[j];
        ss += s * s;
        sy += s * y;
        step_max = std::max(step_max, std::abs(s));
      }
      alpha = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e6) : std::min(2.0 * a, 1e6);
      cur = std::move(*next);
      if (step_max < 1e-14) break;
    }
    return cur;
  }

  // Sorted lattice z_1 <= ... <= z_{n-1} on [ln theta, 0], falling back to
  // random sorted points when the lattice is too large.
  std::vector<Point> seed_points(int per_axis, std::mt19937_64& rng) const {
    std::vector<Point> out;
    if (per_axis < 2) return out;
    double count = 1.0;
    for (int k = 1; k <= dim_; ++k) count = count * (per_axis + k - 1) / k;
    auto level = [&](int i) { return log_theta_ * (1.0 - static_cast<double>(i) / (per_axis - 1)); };

    if (count <= static_cast<double>(kLatticeCap)) {
      std::vector<int> idx(static_cast<std::size_t>(dim_), 0);
      while (true) {
        std::vector<double> z(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) z[j] = level(idx[j]);
        if (auto pt = evaluate(std::move(z))) out.push_back(std::move(*pt));
        int d = dim_ - 1;
        while (d >= 0 && idx[d] == per_axis - 1) --d;
        if (d < 0) break;
        ++idx[d];
        for (int j = d + 1; j < dim_; ++j) idx[j] = idx[d];
      }
    } else {
      for (std::size_t k = 0; k < kLatticeCap; ++k)
        if (auto pt = evaluate(random_z(rng))) out.push_back(std::move(*pt));
    }
    return out;
  }

  std::vector<double> random_z(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> z(static_cast<std::size_t>(dim_));
    for (double& v : z) v = log_theta_ * unit(rng);
    std::sort(z.begin(), z.end());
    return z;
  }

 private:
  ComparisonQuad quad_;
  int n_;
  int dim_;
  double log_theta_;
};

struct Best {
  double f = 0.0;
  std::vector<double> u;
  std::string source;
};

// Applies the one-sided decision rule to the best feasible point.
void decide(const Best& best, const ComparisonQuad& quad, int n, bool bounded, GammaNVerdict& out) {
  out.min_objective = best.f;
  out.argmin = best.u;
  out.witness.reset();
  if (best.f < -tol::dec(n)) {
    std::vector<double> w(best.u);
    const double top = *std::max_element(w.begin(), w.end());
    for (double& v : w) v /= top;
    if (compare_means(quad, w).violated) {
      out.status = Status::NonMember;
      out.witness = std::move(w);
      out.decided_by = best.source;
    } else {
      out.status = Status::Inconclusive;
      out.decided_by = "unverified_witness";
    }
  } else if (bounded) {
    out.status = Status::Member;
    out.decided_by = "minimizer";
  } else {
    out.status = Status::Inconclusive;
    out.decided_by = "box_search";
  }
}

GammaNVerdict trivially_member(int n) {
  GammaNVerdict v;
  v.status = Status::Member;
  v.argmin.assign(static_cast<std::size_t>(n), 1.0);
  v.decided_by = "reflexive";
  return v;
}

}  // namespace

GammaNVerdict minimize_cep(const FeasibleSpec& spec, const SolverBudget& budget) {
  if (spec.n < 2) throw DomainError("minimizer requires n >= 2");
  if (!(spec.theta >= 0.0 && spec.theta < 1.0)) throw DomainError("minimizer requires 0 <= theta < 1");
  if (!spec.quad.lower.finite() || !spec.quad.upper.finite()) throw DomainError("parameters must be finite");
  if (spec.quad.reflexive()) return trivially_member(spec.n);

  const bool bounded = spec.theta > 0.0;
  double theta_eff = spec.theta;
  if (!bounded) {
    if (!(budget.box_L > 0.0 && budget.box_L < 1.0)) throw DomainError("search box requires 0 < L < 1");
    theta_eff = budget.box_L * budget.box_L;
  }

  const Minimizer mini(spec.quad, spec.n, theta_eff);
  std::mt19937_64 rng(budget.rng_seed);
  std::vector<Point> pool = mini.seed_points(budget.grid_per_axis, rng);
  const int randoms = std::max(budget.seeds, 0) / 4;
  for (int k = 0; k < randoms; ++k)
    if (auto pt = mini.evaluate(mini.random_z(rng))) pool.push_back(std::move(*pt));
  if (pool.empty()) throw SolverError("solver budget produced no feasible evaluation");

  GammaNVerdict out;
  out.candidates_examined = static_cast<int>(pool.size());

  // Descend from the best lattice points and from every random start.
  const std::size_t lattice_count = pool.size() - std::min<std::size_t>(pool.size(), randoms);
  std::vector<std::size_t> order(lattice_count);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min<std::size_t>(order.size(), std::max(budget.seeds, 0));
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) { return pool[a].f < pool[b].f; });
  order.resize(keep);
  for (std::size_t k = lattice_count; k < pool.size(); ++k) order.push_back(k);

  Best best{0.0, std::vector<double>(static_cast<std::size_t>(spec.n), 1.0), "constant_point"};
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (pool[k].f < best.f) best = {pool[k].f, pool[k].u, "minimizer"};
  }
  for (std::size_t k : order) {
    const Point end = mini.descend(pool[k], budget.max_iters);
    if (end.f < best.f) best = {end.f, end.u, "minimizer"};
  }

  Best best_without_ma3 = best;
  if (bounded) {
    const auto cands = enumerate_kkt(spec);
    out.kkt_candidates = static_cast<int>(cands.size());
    out.candidates_examined += out.kkt_candidates;
    for (const KktCandidate& c : cands) {
      const bool ma3 = c.case_tag == KktCase::MA3;
      if (ma3) ++out.ma3_candidates;
      if (c.objective < best.f) best = {c.objective, c.expanded(), "kkt"};
      if (!ma3 && c.objective < best_without_ma3.f) best_without_ma3 = {c.objective, c.expanded(), "kkt"};
    }
  }

  if (out.ma3_candidates > 0) {
    GammaNVerdict alt;
    decide(best_without_ma3, spec.quad, spec.n, bounded, alt);
    decide(best, spec.quad, spec.n, bounded, out);
    out.ma3_changed_verdict = alt.status != out.status;
  } else {
    decide(best, spec.quad, spec.n, bounded, out);
  }
  return out;
}

GammaNVerdict decide_gamma_n(const ComparisonQuad& quad, const Interval& interval, int n,
                             const SolverBudget& budget, bool cross_check) {
  if (n < 2) throw DomainError("decide_gamma_n requires n >= 2");
  const Interval canon = canonicalize(interval);
  const double theta = canon.theta();
  if (quad.reflexive()) return trivially_member(n);

  auto finish = [&](GammaNVerdict v) {
    if (v.witness) place_in_interval(*v.witness, interval);
    return v;
  };

  if (n == 2) {
    const Verdict closed = in_gamma2(quad, interval);
    GammaNVerdict v;
    v.status = closed.status;
    v.witness = closed.witness;
    v.decided_by = "gamma2_closed_form";
    if (v.status == Status::NonMember && !v.witness) v.status = Status::Inconclusive;
    if (cross_check) {
      const GammaNVerdict solved = minimize_cep({quad, 2, theta}, budget);
      v.min_objective = solved.min_objective;
      v.argmin = solved.argmin;
      v.candidates_examined = solved.candidates_examined;
      v.kkt_candidates = solved.kkt_candidates;
      v.ma3_candidates = solved.ma3_candidates;
      const bool conflict = (v.status == Status::Member && solved.status == Status::NonMember) ||
                            (v.status == Status::NonMember && solved.status == Status::Member);
      if (conflict) {
        v.status = Status::Inconclusive;
        v.witness.reset();
        v.decided_by = "cross_check_conflict";
      }
    }
    return v;
  }

  // Two-level vectors on the ends of the interval; the (n-1, 1) and (1, n-1)
  // patterns first.
  if (theta > 0.0) {
    std::vector<int> lows{n - 1, 1};
    for (int k = 2; k < n - 1; ++k) lows.push_back(k);
    for (int low : lows) {
      std::vector<double> x(static_cast<std::size_t>(n), 1.0);
      std::fill(x.begin(), x.begin() + low, theta);
      if (compare_means(quad, x).violated) {
        GammaNVerdict v;
        v.status = Status::NonMember;
        v.witness = std::move(x);
        v.decided_by = "boundary_vector";
        return finish(std::move(v));
      }
    }
  }

  // A violating pair padded with copies of its lower mean violates in n variables.
  const Verdict g2 = in_gamma2(quad, canon);
  if (g2.status == Status::NonMember && g2.witness) {
    std::vector<double> x(*g2.witness);
    const double t = gini_mean(quad.lower, x);
    x.resize(static_cast<std::size_t>(n), t);
    std::sort(x.begin(), x.end());
    if (compare_means(quad, x).violated) {
      const double top = x.back();
      for (double& v : x) v /= top;
      GammaNVerdict v;
      v.status = Status::NonMember;
      v.witness = std::move(x);
      v.decided_by = "gamma2_chain";
      return finish(std::move(v));
    }
  }

  if (in_gamma_inf(quad, canon).status == Status::Member) {
    GammaNVerdict v;
    v.status = Status::Member;
    v.argmin.assign(static_cast<std::size_t>(n), 1.0);
    v.decided_by = "gamma_inf";
    return v;
  }

  return finish(minimize_cep({quad, n, theta}, budget));
}

}  // namespace gini
