#include "gini/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "gini/means.hpp"
#include "gini/tolerances.hpp"

namespace gini {
namespace {

std::vector<double> geometric_lattice(double theta, int resolution) {
  std::vector<double> out(static_cast<std::size_t>(resolution));
  const double log_theta = std::log(theta);
  for (int k = 0; k < resolution; ++k)
    out[k] = std::exp(log_theta * (1.0 - static_cast<double>(k) / (resolution - 1)));
  out.front() = theta;
  out.back() = 1.0;
  return out;
}

// Walks all non-decreasing index tuples (i_0 <= ... <= i_{n-1}) of a lattice in
// lexicographic order and calls visit(idx) until it returns true.
template <class Visit>
bool for_each_sorted_tuple(int n, int resolution, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    if (visit(idx)) return true;
    int d = n - 1;
    while (d >= 0 && idx[d] == resolution - 1) --d;
    if (d < 0) return false;
    ++idx[d];
    for (int j = d + 1; j < n; ++j) idx[j] = idx[d];
  }
}

// Screens lattice tuples with running power sums over the four exponents and
// hands likely violations to the direct check. Independent of the
// log-domain evaluation in gini_mean except for that final confirmation.
class PowerSumScreen {
 public:
  PowerSumScreen(const ComparisonQuad& quad, const std::vector<double>& lattice, int n)
      : quad_(quad), n_(n), exps_{quad.lower.p, quad.lower.q, quad.upper.p, quad.upper.q} {
    const double log_theta = std::abs(std::log(lattice.front()));
    double max_exp = 0.0;
    for (double e : exps_) max_exp = std::max(max_exp, std::abs(e));
    const double max_log = max_exp * log_theta + std::log(static_cast<double>(n)) + 1.0;
    double min_gap = 1.0;
    for (auto [a, b] : {std::pair{exps_[0], exps_[1]}, std::pair{exps_[2], exps_[3]}})
      if (a != b) min_gap = std::min(min_gap, std::abs(a - b));
    const double err = 8.0 * std::numeric_limits<double>::epsilon() * max_log / min_gap;
    slack_ = 1e-9 + err;
    usable_ = max_exp * log_theta < 600.0 && slack_ < 1e-6;

    if (!usable_) return;
    const std::size_t m = lattice.size();
    for (std::size_t e = 0; e < 4; ++e) {
      pow_[e].resize(m);
      plog_[e].resize(m);
      for (std::size_t k = 0; k < m; ++k) {
        const double lx = std::log(lattice[k]);
        pow_[e][k] = std::exp(exps_[e] * lx);
        plog_[e][k] = pow_[e][k] * lx;
      }
    }
    sums_.assign(static_cast<std::size_t>(n) * 8, 0.0);
  }

  bool usable() const { return usable_; }

  // Partial sums for the tuple prefix ending at depth d are recomputed from d.
  bool likely_violation(const std::vector<int>& idx, int from_depth) {
    for (int d = from_depth; d < n_; ++d) {
      double* cur = &sums_[static_cast<std::size_t>(d) * 8];
      const double* prev = d > 0 ? &sums_[static_cast<std::size_t>(d - 1) * 8] : nullptr;
      for (std::size_t e = 0; e < 4; ++e) {
        cur[e] = (prev ? prev[e] : 0.0) + pow_[e][idx[d]];
        cur[4 + e] = (prev ? prev[4 + e] : 0.0) + plog_[e][idx[d]];
      }
    }
    const double* s = &sums_[static_cast<std::size_t>(n_ - 1) * 8];
    const double lower = log_mean(s, 0, 1);
    const double upper = log_mean(s, 2, 3);
    return lower - upper > std::log1p(tol::kRefute) - slack_;
  }

 private:
  double log_mean(const double* s, std::size_t i, std::size_t j) const {
    if (exps_[i] == exps_[j]) return s[4 + i] / s[i];
    return (std::log(s[i]) - std::log(s[j])) / (exps_[i] - exps_[j]);
  }

  ComparisonQuad quad_;
  int n_;
  std::array<double, 4> exps_;
  std::array<std::vector<double>, 4> pow_;
  std::array<std::vector<double>, 4> plog_;
  std::vector<double> sums_;
  double slack_ = 0.0;
  bool usable_ = false;
};

}  // namespace

double violation_margin(const ComparisonQuad& quad, std::span<const double> x) {
  const double lhs = gini_mean(quad.lower, x);
  const double rhs = gini_mean(quad.upper, x);
  return (lhs - rhs) / rhs;
}

bool is_violation(const ComparisonQuad& quad, std::span<const double> x) {
  return violation_margin(quad, x) > tol::kRefute;
}

std::optional<std::vector<double>> grid_refute(const ComparisonQuad& quad, const GridSpec& spec) {
  const double theta = spec.interval.theta();
  if (!(theta > 0.0)) throw DomainError("grid search requires a bounded interval with theta > 0");
  if (spec.n < 1 || spec.resolution < 2) throw DomainError("grid search requires n >= 1 and resolution >= 2");
  const double total = std::pow(static_cast<double>(spec.resolution), spec.n) +
                       static_cast<double>(spec.random_extra);
  if (total > spec.max_evaluations) throw ResourceError("grid search exceeds evaluation cap");
  if (quad.reflexive()) return std::nullopt;

  const std::vector<double> lattice = geometric_lattice(std::min(theta, 1.0), spec.resolution);
  std::vector<double> x(static_cast<std::size_t>(spec.n));
  auto fill = [&](const std::vector<int>& idx) {
    for (int i = 0; i < spec.n; ++i) x[i] = lattice[idx[i]];
  };

  PowerSumScreen screen(quad, lattice, spec.n);
  std::vector<int> last(static_cast<std::size_t>(spec.n), -1);
  const bool found = for_each_sorted_tuple(spec.n, spec.resolution, [&](const std::vector<int>& idx) {
    if (screen.usable()) {
      int from = 0;
      while (from < spec.n && idx[from] == last[from]) ++from;
      last = idx;
      if (!screen.likely_violation(idx, from)) return false;
    }
    fill(idx);
    return is_violation(quad, x);
  });
  if (found) return x;

  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_theta = std::log(theta);
  for (std::size_t k = 0; k < spec.random_extra; ++k) {
    for (double& v : x) v = std::exp(log_theta * unit(rng));
    std::sort(x.begin(), x.end());
    if (is_violation(quad, x)) return x;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> pair_refute(const ComparisonQuad& quad, double theta, int samples) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("pair search requires 0 < theta < 1");
  if (quad.reflexive()) return std::nullopt;
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(samples) + 48);
  const double log_theta = std::log(theta);
  for (int k = 0; k < samples; ++k)
    ratios.push_back(std::exp(log_theta * (1.0 - static_cast<double>(k) / samples)));
  for (int j = 1; j <= 40; ++j) {
    const double t = 1.0 - std::ldexp(1.0, -j);
    if (t >= theta) ratios.push_back(t);
  }

  std::optional<std::vector<double>> best;
  double best_margin = tol::kRefute;
  for (double t : ratios) {
    const std::array<double, 2> x{t, 1.0};
    const double m = violation_margin(quad, x);
    if (m > best_margin) {
      best_margin = m;
      best = std::vector<double>(x.begin(), x.end());
    }
  }
  return best;
}

std::optional<std::vector<double>> two_level_refute(const ComparisonQuad& quad, double theta, int max_n) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("two-level search requires 0 < theta < 1");
  if (quad.reflexive()) return std::nullopt;
  for (int total = 2; total <= max_n; ++total) {
    for (int low = 1; low < total; ++low) {
      std::vector<double> x(static_cast<std::size_t>(total), 1.0);
      std::fill(x.begin(), x.begin() + low, theta);
      if (is_violation(quad, x)) return x;
    }
  }
  return std::nullopt;
}

}  // namespace gini
