// Enumeration of stationary points of
//   minimize sum_i chi_{p,q}(u_i)  s.t.  sum_i chi_{r,s}(u_i) = 0,  theta max(u) <= min(u).
//
// A stationary point is described by its distinct values and their
// multiplicities. Interior points (MA1) solve, for a common multiplier rho,
//   chi'_{p,q}(v_k) + rho chi'_{r,s}(v_k) = 0   for every value v_k,
//   sum_k m_k chi_{r,s}(v_k) = 0.
// Boundary points put alpha entries at v and beta entries at w = v / theta.
// Summing the Lagrange conditions over the minimum and maximum classes
// eliminates the pairwise multipliers and leaves the face condition
//   alpha E(v) + (beta / theta) E(w) = 0,   E(u) = chi'_{p,q}(u) + rho chi'_{r,s}(u),
// with E(v) >= 0 carrying the sign of the eliminated multipliers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include "gini/errors.hpp"
#include "gini/means.hpp"
#include "gini/solver.hpp"
#include "gini/tolerances.hpp"

namespace gini {
namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr int kNewtonIters = 200;
constexpr int kNewtonHalvings = 40;
constexpr double kNewtonTol = 1e-12;
constexpr double kDistinctRel = 1e-4;
constexpr double kMaxLog = 60.0;

// Damped Newton with a central-difference Jacobian. Returns nullopt when the
// iteration does not reach the residual tolerance.
template <class Residual>
std::optional<Vec> damped_newton(Residual&& residual, Vec x) {
  Vec r = residual(x);
  if (!r.allFinite()) return std::nullopt;
  const Eigen::Index cols = x.size();
  for (int it = 0; it < kNewtonIters; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= kNewtonTol) return x;
    Mat jac(r.size(), cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      Vec up = x;
      Vec down = x;
      up[j] += h;
      down[j] -= h;
      jac.col(j) = (residual(up) - residual(down)) / (2.0 * h);
    }
    if (!jac.allFinite()) return std::nullopt;
    Eigen::ColPivHouseholderQR<Mat> qr(jac);
    if (qr.rank() < cols) return std::nullopt;
    const Vec step = qr.solve(-r);

    const double norm0 = r.norm();
    double damp = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kNewtonHalvings; ++h, damp *= 0.5) {
      const Vec trial = x + damp * step;
      const Vec rt = residual(trial);
      if (rt.allFinite() && rt.norm() < norm0) {
        x = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (r.lpNorm<Eigen::Infinity>() <= kNewtonTol) return x;
  return std::nullopt;
}

Vec nan_vec(Eigen::Index n) { return Vec::Constant(n, std::numeric_limits<double>::quiet_NaN()); }

bool logs_in_range(const Vec& y, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i)
    if (!(std::abs(y[i]) < kMaxLog)) return false;
  return true;
}

bool distinct(double a, double b) { return b - a > kDistinctRel * std::max(std::abs(a), std::abs(b)); }

double least_squares_rho(const ComparisonQuad& quad, const std::vector<double>& values) {
  double num = 0.0;
  double den = 0.0;
  for (double v : values) {
    const double a = chi_prime(quad.upper, v);
    const double b = chi_prime(quad.lower, v);
    num += a * b;
    den += b * b;
  }
  return den > 0.0 ? -num / den : -1.0;
}

double objective_of(const ComparisonQuad& quad, const std::vector<double>& values, const std::vector<int>& mult) {
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) acc += mult[k] * chi(quad.upper, values[k]);
  return acc;
}

// Compositions of n into m positive parts, largest part first.
std::vector<std::vector<int>> multiplicity_splits(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int parts) {
    if (parts == 1) {
      cur.push_back(remaining);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int k = 1; k <= remaining - parts + 1; ++k) {
      cur.push_back(k);
      rec(remaining - k, parts - 1);
      cur.pop_back();
    }
  };
  if (m >= 1 && m <= n) rec(n, m);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int ma = *std::max_element(a.begin(), a.end());
    const int mb = *std::max_element(b.begin(), b.end());
    if (ma != mb) return ma > mb;
    return a > b;
  });
  return out;
}

class Enumerator {
 public:
  Enumerator(const ComparisonQuad& quad, int n, double theta, double lo, double hi)
      : quad_(quad), rs_(quad.lower), pq_(quad.upper), n_(n), theta_(theta), lo_(lo), hi_(hi) {}

  std::vector<KktCandidate> run(bool boundary) {
    add({{1.0}, {n_}, -1.0, KktCase::MA1, 0.0});
    if (quad_.reflexive()) return finish();
    const int cap = std::min({interior_value_cap(quad_), 3, n_});
    for (int m = 2; m <= cap; ++m)
      for (const auto& split : multiplicity_splits(n_, m)) interior(split);
    if (boundary && theta_ > 0.0) {
      for (int alpha = 1; alpha < n_; ++alpha) {
        for (int beta = 1; alpha + beta <= n_; ++beta) {
          const int gamma = n_ - alpha - beta;
          if (gamma == 0)
            two_level_face(alpha, beta);
          else
            three_level_face(alpha, beta, gamma);
        }
      }
    }
    return finish();
  }

 private:
  double stat(double u, double rho) const { return chi_prime(pq_, u) + rho * chi_prime(rs_, u); }
  double stat_scale(double u, double rho) const {
    return 1.0 + std::abs(chi_prime(pq_, u)) + std::abs(rho * chi_prime(rs_, u));
  }

  void interior(const std::vector<int>& mult) {
    const auto m = static_cast<Eigen::Index>(mult.size());
    auto residual = [&](const Vec& y) -> Vec {
      if (!logs_in_range(y, m)) return nan_vec(m + 1);
      const double rho = y[m];
      Vec r(m + 1);
      double h = 0.0;
      double h_scale = 1.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        const double v = std::exp(y[k]);
        r[k] = stat(v, rho) / stat_scale(v, rho);
        const double c = chi(rs_, v);
        h += mult[k] * c;
        h_scale += mult[k] * std::abs(c);
      }
      r[m] = h / h_scale;
      return r;
    };

    const double log_lo = std::log(theta_ > 0.0 ? theta_ : lo_);
    const double log_hi = std::log(theta_ > 0.0 ? 1.0 / theta_ : hi_);
    const int outer = m == 2 ? 8 : 6;
    const int middle = m == 2 ? 0 : 3;
    for (int i = 0; i < outer; ++i) {
      for (int j = 0; j < outer; ++j) {
        const double first = log_lo * (i + 0.5) / outer;
        const double last = log_hi * (j + 0.5) / outer;
        if (theta_ > 0.0 && last - first >= -std::log(theta_)) continue;
        for (int k = 0; k < std::max(middle, 1); ++k) {
          std::vector<double> seed{first};
          if (m == 3) seed.push_back(first + (last - first) * (k + 1) / (middle + 1));
          seed.push_back(last);
          Vec y(m + 1);
          std::vector<double> values;
          for (Eigen::Index t = 0; t < m; ++t) {
            y[t] = seed[t];
            values.push_back(std::exp(seed[t]));
          }
          y[m] = least_squares_rho(quad_, values);
          if (auto sol = damped_newton(residual, y)) accept_interior(*sol, mult);
        }
      }
    }
  }

  void accept_interior(const Vec& y, const std::vector<int>& mult) {
    const auto m = static_cast<Eigen::Index>(mult.size());
    std::vector<std::pair<double, int>> pts;
    for (Eigen::Index k = 0; k < m; ++k) pts.emplace_back(std::exp(y[k]), mult[k]);
    std::sort(pts.begin(), pts.end());
    KktCandidate c;
    c.rho = y[m];
    c.case_tag = KktCase::MA1;
    for (auto [v, k] : pts) {
      if (!c.values.empty() && !distinct(c.values.back(), v)) return;
      c.values.push_back(v);
      c.multiplicities.push_back(k);
    }
    if (theta_ > 0.0) {
      if (!(theta_ * c.values.back() < c.values.front() * (1.0 - 1e-9))) return;
    } else if (c.values.front() < lo_ || c.values.back() > hi_) {
      return;
    }
    c.objective = objective_of(quad_, c.values, c.multiplicities);
    add(std::move(c));
  }

  // alpha entries at v = theta / G, beta entries at w = 1 / G, G = G_{r,s}(theta x alpha, 1 x beta).
  void two_level_face(int alpha, int beta) {
    std::vector<double> x(static_cast<std::size_t>(alpha + beta), 1.0);
    std::fill(x.begin(), x.begin() + alpha, theta_);
    const double g = gini_mean(rs_, x);
    const double v = theta_ / g;
    const double w = 1.0 / g;
    const double wa = alpha;
    const double wb = beta / theta_;
    const double cp = wa * chi_prime(pq_, v) + wb * chi_prime(pq_, w);
    const double cr = wa * chi_prime(rs_, v) + wb * chi_prime(rs_, w);
    const double scale = 1.0 + wa * std::abs(chi_prime(rs_, v)) + wb * std::abs(chi_prime(rs_, w));

    KktCandidate c;
    c.values = {v, w};
    c.multiplicities = {alpha, beta};
    c.objective = objective_of(quad_, c.values, c.multiplicities);
    if (std::abs(cr) > 1e-14 * scale) {
      c.rho = -cp / cr;
      c.case_tag = KktCase::MA2;
      if (stat(v, c.rho) >= -tol::stat(c.rho)) add(c);
    } else {
      c.rho = chi_prime(rs_, v) >= 0.0 ? 1.0 : -1.0;
      c.case_tag = KktCase::MA3;
      add(c);
    }
  }

  void three_level_face(int alpha, int beta, int gamma) {
    const double wa = alpha;
    const double wb = beta / theta_;
    auto residual = [&](const Vec& y) -> Vec {
      if (!logs_in_range(y, 2)) return nan_vec(3);
      const double v = std::exp(y[0]);
      const double z = std::exp(y[1]);
      const double w = v / theta_;
      const double rho = y[2];
      Vec r(3);
      r[0] = stat(z, rho) / stat_scale(z, rho);
      r[1] = (wa * stat(v, rho) + wb * stat(w, rho)) / (wa * stat_scale(v, rho) + wb * stat_scale(w, rho));
      const double cv = chi(rs_, v);
      const double cw = chi(rs_, w);
      const double cz = chi(rs_, z);
      r[2] = (alpha * cv + beta * cw + gamma * cz) /
             (1.0 + alpha * std::abs(cv) + beta * std::abs(cw) + gamma * std::abs(cz));
      return r;
    };

    const double log_theta = std::log(theta_);
    constexpr int kV = 8;
    constexpr int kZ = 5;
    for (int i = 0; i < kV; ++i) {
      const double lv = log_theta * (i + 0.5) / kV;
      for (int j = 0; j < kZ; ++j) {
        const double lz = lv - log_theta * (j + 1.0) / (kZ + 1);
        Vec y(3);
        y << lv, lz, least_squares_rho(quad_, {std::exp(lz)});
        if (auto sol = damped_newton(residual, y)) {
          const double v = std::exp((*sol)[0]);
          const double z = std::exp((*sol)[1]);
          const double w = v / theta_;
          const double rho = (*sol)[2];
          if (!distinct(v, z) || !distinct(z, w)) continue;
          if (stat(v, rho) < -tol::stat(rho)) continue;
          KktCandidate c{{v, z, w}, {alpha, gamma, beta}, rho, KktCase::MA2, 0.0};
          c.objective = objective_of(quad_, c.values, c.multiplicities);
          add(std::move(c));
        }
      }
    }
    three_level_ma3(alpha, beta, gamma);
  }

  // MA3 needs chi'_{r,s}(z) = 0 at the interior value, which fixes z.
  void three_level_ma3(int alpha, int beta, int gamma) {
    const double r = rs_.p;
    const double s = rs_.q;
    double z = 0.0;
    if (r == s) {
      if (r == 0.0) return;
      z = std::exp(-1.0 / r);
    } else {
      if (r == 0.0 || s == 0.0 || s / r <= 0.0) return;
      z = std::pow(s / r, 1.0 / (r - s));
    }
    const double cz = chi(rs_, z);
    auto h = [&](double v) { return alpha * chi(rs_, v) + beta * chi(rs_, v / theta_) + gamma * cz; };
    const double lo = std::max(theta_ * z, theta_);
    const double hi = std::min(z, 1.0);
    if (!(lo < hi)) return;
    constexpr int kScan = 64;
    double prev_v = lo;
    double prev_h = h(lo);
    for (int k = 1; k <= kScan; ++k) {
      const double v = lo * std::pow(hi / lo, static_cast<double>(k) / kScan);
      const double hv = h(v);
      if (prev_h == 0.0 || (prev_h < 0.0) != (hv < 0.0)) {
        double root = prev_v;
        if (prev_h != 0.0) {
          std::uintmax_t iters = 100;
          const auto bracket = boost::math::tools::toms748_solve(
              h, prev_v, v, prev_h, hv, boost::math::tools::eps_tolerance<double>(50), iters);
          root = 0.5 * (bracket.first + bracket.second);
        }
        const double w = root / theta_;
        const double face = alpha * chi_prime(rs_, root) + (beta / theta_) * chi_prime(rs_, w);
        const double scale = 1.0 + alpha * std::abs(chi_prime(rs_, root)) +
                             (beta / theta_) * std::abs(chi_prime(rs_, w));
        if (std::abs(face) <= tol::kStatBase * scale && distinct(root, z) && distinct(z, w)) {
          KktCandidate c{{root, z, w}, {alpha, gamma, beta}, chi_prime(rs_, root) >= 0.0 ? 1.0 : -1.0,
                         KktCase::MA3, 0.0};
          c.objective = objective_of(quad_, c.values, c.multiplicities);
          add(std::move(c));
        }
      }
      prev_v = v;
      prev_h = hv;
    }
  }

  void add(KktCandidate c) {
    for (const KktCandidate& e : out_) {
      if (e.case_tag != c.case_tag || e.multiplicities != c.multiplicities) continue;
      bool same = true;
      for (std::size_t k = 0; k < c.values.size() && same; ++k)
        same = std::abs(e.values[k] - c.values[k]) <= 1e-7 * c.values[k];
      if (same) return;
    }
    if (!verify_kkt(c, quad_, n_, theta_)) return;
    out_.push_back(std::move(c));
  }

  std::vector<KktCandidate> finish() {
    std::sort(out_.begin(), out_.end(), [](const KktCandidate& a, const KktCandidate& b) {
      if (a.case_tag != b.case_tag) return a.case_tag < b.case_tag;
      if (a.multiplicities != b.multiplicities) return a.multiplicities < b.multiplicities;
      return a.values < b.values;
    });
    return std::move(out_);
  }

  ComparisonQuad quad_;
  ParamPair rs_;
  ParamPair pq_;
  int n_;
  double theta_;
  double lo_;
  double hi_;
  std::vector<KktCandidate> out_;
};

}  // namespace

std::string_view to_string(KktCase c) {
  switch (c) {
    case KktCase::MA1: return "MA1";
    case KktCase::MA2: return "MA2";
    case KktCase::MA3: return "MA3";
  }
  return "?";
}

std::vector<double> KktCandidate::expanded() const {
  std::vector<double> u;
  for (std::size_t k = 0; k < values.size(); ++k) u.insert(u.end(), multiplicities[k], values[k]);
  return u;
}

int interior_value_cap(const ComparisonQuad& quad) {
  // exponent -> highest power of ln u multiplying u^exponent in u chi'(u)
  std::map<double, int> degree;
  auto bump = [&](double e, int d) {
    auto [it, inserted] = degree.emplace(e, d);
    if (!inserted) it->second = std::max(it->second, d);
  };
  for (const ParamPair& pp : {quad.lower, quad.upper}) {
    if (pp.p == pp.q) {
      bump(pp.p, pp.p != 0.0 ? 1 : 0);
    } else {
      if (pp.p != 0.0) bump(pp.p, 0);
      if (pp.q != 0.0) bump(pp.q, 0);
    }
  }
  int terms = 0;
  for (const auto& [e, d] : degree) terms += d + 1;
  return std::clamp(terms - 1, 1, 3);
}

bool verify_kkt(const KktCandidate& c, const ComparisonQuad& quad, int n, double theta) {
  if (c.values.empty() || c.values.size() != c.multiplicities.size()) return false;
  int total = 0;
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    if (!(c.values[k] > 0.0) || !std::isfinite(c.values[k]) || c.multiplicities[k] < 1) return false;
    if (k > 0 && !(c.values[k] > c.values[k - 1])) return false;
    total += c.multiplicities[k];
  }
  if (total != n) return false;

  double h = 0.0;
  double h_mag = 0.0;
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    const double v = chi(quad.lower, c.values[k]);
    h += c.multiplicities[k] * v;
    h_mag += c.multiplicities[k] * std::abs(v);
  }
  if (std::abs(h) > tol::eq(n) * std::max(1.0, h_mag)) return false;

  const double vmin = c.values.front();
  const double vmax = c.values.back();
  const double objective = objective_of(quad, c.values, c.multiplicities);
  if (std::abs(objective - c.objective) > 1e-12 * (1.0 + std::abs(objective))) return false;

  // Stationarity expression and its natural magnitude at u.
  auto expr = [&](double u) {
    if (c.case_tag == KktCase::MA3) return c.rho * chi_prime(quad.lower, u);
    return chi_prime(quad.upper, u) + c.rho * chi_prime(quad.lower, u);
  };
  auto band = [&](double u) {
    const double mag = (c.case_tag == KktCase::MA3 ? 0.0 : std::abs(chi_prime(quad.upper, u))) +
                       std::abs(c.rho * chi_prime(quad.lower, u));
    return tol::stat(c.rho) * std::max(1.0, mag);
  };

  if (c.case_tag == KktCase::MA1) {
    if (theta > 0.0 && !(theta * vmax < vmin)) return false;
    for (double v : c.values)
      if (std::abs(expr(v)) > band(v)) return false;
    return true;
  }

  if (!(theta > 0.0) || c.values.size() < 2) return false;
  if (std::abs(theta * vmax - vmin) > tol::eq(n) * std::max(1.0, vmin)) return false;
  if (c.case_tag == KktCase::MA3 && c.rho == 0.0) return false;
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    const double u = c.values[k];
    const double e = expr(u);
    if (k == 0) {
      if (e < -band(u)) return false;
    } else if (k + 1 == c.values.size()) {
      if (e > band(u)) return false;
    } else if (std::abs(e) > band(u)) {
      return false;
    }
  }
  return true;
}

std::vector<KktCandidate> enumerate_kkt(const FeasibleSpec& spec) {
  if (!(spec.theta > 0.0 && spec.theta < 1.0)) throw DomainError("KKT enumeration requires 0 < theta < 1");
  if (spec.n < 2) throw DomainError("KKT enumeration requires n >= 2");
  return Enumerator(spec.quad, spec.n, spec.theta, spec.theta, 1.0 / spec.theta).run(true);
}

std::vector<KktCandidate> enumerate_interior_stationary(const ComparisonQuad& quad, int n, double lo, double hi) {
  if (!(lo > 0.0 && lo < 1.0 && hi > 1.0)) throw DomainError("interior enumeration requires lo < 1 < hi");
  if (n < 2) throw DomainError("interior enumeration requires n >= 2");
  return Enumerator(quad, n, 0.0, lo, hi).run(false);
}

}  // namespace gini
