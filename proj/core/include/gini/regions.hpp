#pragma once

#include <vector>

#include "gini/types.hpp"

namespace gini {

/// Representative of the class of intervals sharing theta = inf(I * I^-1):
/// [theta, 1] when theta > 0, (0, inf) otherwise.
Interval canonicalize(const Interval& interval);

/// Closed-form membership in Gamma_2(I).
///
/// theta = 0: r+s <= p+q, lambda(r,s) <= lambda(p,q) and mu(r,s) <= mu(p,q).
/// theta > 0: r+s <= p+q and G_{r,s}(theta,1) <= G_{p,q}(theta,1).
/// A NonMember verdict names the failed condition and carries a 2-vector
/// witness when the pair scan finds one.
Verdict in_gamma2(const ComparisonQuad& quad, const Interval& interval);

/// Closed-form membership in Gamma_inf(I).
///
/// theta = 0: min(r,s) <= min(p,q) and max(r,s) <= max(p,q).
/// theta > 0: chi_{r,s}(theta) <= chi_{p,q}(theta) and the same at 1/theta.
Verdict in_gamma_inf(const ComparisonQuad& quad, const Interval& interval);

/// Rescales a witness found on a canonical interval [theta', 1] into the given
/// interval (by b when finite, else so that its minimum lands on a > 0).
void place_in_interval(std::vector<double>& witness, const Interval& interval);

}  // namespace gini
