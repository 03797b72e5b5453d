#pragma once

#include <span>

#include "gini/types.hpp"

namespace gini {

/// n-variable Gini mean G_{p,q}(x).
///
/// Evaluated in the log domain on the sorted sample so the result is
/// permutation invariant and safe for |p ln x| well beyond the exp range.
/// Throws DomainError for an empty sample, non-positive or non-finite
/// entries, or non-finite parameters.
double gini_mean(ParamPair params, std::span<const double> x);

/// chi_{p,q}(t) = (t^p - t^q) / (p - q), or t^p ln t when p == q exactly.
double chi(ParamPair params, double t);

/// Derivative of chi_{p,q} with respect to t.
double chi_prime(ParamPair params, double t);

double lambda_fn(double u, double v);
double mu_fn(double u, double v);

/// sum_i chi_{p,q}(x_i / t) with its sign. The sign matches sign(G_{p,q}(x) - t).
struct ChiSignSum {
  double sum = 0.0;
  double magnitude = 0.0;  // sum_i |chi_{p,q}(x_i / t)|
  int sign = 0;            // 0 inside the tolerance band
};

ChiSignSum sign_sum_chi(ParamPair params, double t, std::span<const double> x);

/// Both sides of G_{lower}(x) <= G_{upper}(x) and the banded outcome.
struct MeanComparison {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;  // lhs exceeds rhs beyond the comparison band
  bool boundary = false;  // inside the band
};

MeanComparison compare_means(const ComparisonQuad& quad, std::span<const double> x);

}  // namespace gini
