#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gini/types.hpp"

namespace gini {

/// Brute-force search domain: a geometric lattice on the canonical
/// interval [theta, 1] in every coordinate, plus uniformly drawn extra points.
struct GridSpec {
  Interval interval{1.0, 2.0};
  int n = 2;
  int resolution = 32;
  std::size_t random_extra = 0;
  std::uint64_t rng_seed = 0;
  double max_evaluations = 1e8;
};

/// Relative violation (G_lower(x) - G_upper(x)) / G_upper(x), evaluated directly.
double violation_margin(const ComparisonQuad& quad, std::span<const double> x);

/// True when x violates G_lower <= G_upper by more than the refutation margin.
bool is_violation(const ComparisonQuad& quad, std::span<const double> x);

/// First sorted lattice tuple (lexicographic in lattice index), then first
/// random point, that violates the comparison. Throws ResourceError when
/// resolution^n + random_extra exceeds the cap and DomainError for theta = 0.
std::optional<std::vector<double>> grid_refute(const ComparisonQuad& quad, const GridSpec& spec);

/// Two-variable search over pairs (t, 1), t in [theta, 1]. Returns the pair
/// with the largest violation, if any.
std::optional<std::vector<double>> pair_refute(const ComparisonQuad& quad, double theta,
                                               int samples = 2048);

/// Search over two-level vectors (theta x k, 1 x m) with k + m <= max_n.
/// Returns the shortest violating vector.
std::optional<std::vector<double>> two_level_refute(const ComparisonQuad& quad, double theta,
                                                    int max_n = 64);

}  // namespace gini
