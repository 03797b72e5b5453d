#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gini/errors.hpp"

namespace gini {

/// Exponent pair (p, q) indexing the Gini mean G_{p,q}. (p, q) and (q, p)
/// index the same mean.
struct ParamPair {
  double p = 0.0;
  double q = 0.0;

  friend bool operator==(const ParamPair&, const ParamPair&) = default;

  ParamPair swapped() const { return {q, p}; }
  ParamPair scaled(double t) const { return {t * p, t * q}; }
  bool finite() const { return std::isfinite(p) && std::isfinite(q); }
};

/// True when both pairs index the same mean, i.e. they agree up to a swap.
inline bool same_mean(const ParamPair& a, const ParamPair& b) {
  return (a.p == b.p && a.q == b.q) || (a.p == b.q && a.q == b.p);
}

/// The comparison G_{lower} <= G_{upper}, i.e. ((r,s),(p,q)) with lower = (r,s).
struct ComparisonQuad {
  ParamPair lower;
  ParamPair upper;

  friend bool operator==(const ComparisonQuad&, const ComparisonQuad&) = default;

  ComparisonQuad scaled(double t) const { return {lower.scaled(t), upper.scaled(t)}; }
  /// ((-p,-q),(-r,-s)); membership is invariant under this map.
  ComparisonQuad negated_dual() const {
    return {upper.scaled(-1.0), lower.scaled(-1.0)};
  }
  bool reflexive() const { return same_mean(lower, upper); }
};

/// Subinterval of the positive reals described by its infimum a >= 0 and
/// supremum b > a (b may be +inf). Open and closed endpoints are not
/// distinguished.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || a < 0.0 || std::isnan(b) || !(b > a))
      throw DomainError("interval requires 0 <= a < b <= inf");
  }

  static Interval positive_reals() {
    return {0.0, std::numeric_limits<double>::infinity()};
  }

  double a() const { return a_; }
  double b() const { return b_; }

  /// inf(I * I^-1) = a / b, zero when a = 0 or b = inf.
  double theta() const {
    if (a_ == 0.0 || std::isinf(b_)) return 0.0;
    return a_ / b_;
  }

  Interval scaled(double t) const { return {t * a_, t * b_}; }
  Interval inverse() const;
  Interval power(double t) const;

 private:
  double a_;
  double b_;
};

inline Interval Interval::inverse() const {
  const double inf = std::numeric_limits<double>::infinity();
  const double lo = std::isinf(b_) ? 0.0 : 1.0 / b_;
  const double hi = a_ == 0.0 ? inf : 1.0 / a_;
  return {lo, hi};
}

inline Interval Interval::power(double t) const {
  if (!(t > 0.0)) throw DomainError("interval power requires t > 0");
  const double inf = std::numeric_limits<double>::infinity();
  return {a_ == 0.0 ? 0.0 : std::pow(a_, t), std::isinf(b_) ? inf : std::pow(b_, t)};
}

enum class Status { Member, NonMember, Inconclusive };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Member: return "Member";
    case Status::NonMember: return "NonMember";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Membership answer of the closed-form deciders.
struct Verdict {
  Status status = Status::Inconclusive;
  std::optional<std::vector<double>> witness;  // violating sample vector
  std::optional<double> margin;                // rhs - lhs of the binding condition
  std::string failed_condition;                // identifier of the violated or binding condition
};

}  // namespace gini
