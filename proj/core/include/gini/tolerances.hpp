#pragma once

#include <algorithm>
#include <cmath>

namespace gini::tol {

// Zero band of sign_sum_chi, relative to sum |chi(x_i / t)| + 1.
inline constexpr double kSignRel = 1e-12;
// Boundary band of closed-form comparisons, relative to 1 + |lhs| + |rhs|.
inline constexpr double kCmpRel = 1e-10;
// Relative violation margin required by the brute-force oracle.
inline constexpr double kRefute = 1e-11;
// Per-variable factors for the constrained minimizer.
inline constexpr double kEqPerVar = 1e-10;
inline constexpr double kStatBase = 1e-8;
inline constexpr double kDecPerVar = 1e-9;

inline double sign_band(double magnitude) { return kSignRel * (magnitude + 1.0); }
inline double cmp_band(double lhs, double rhs) {
  return kCmpRel * (1.0 + std::abs(lhs) + std::abs(rhs));
}
inline double eq(int n) { return kEqPerVar * n; }
inline double stat(double rho) { return kStatBase * (1.0 + std::abs(rho)); }
inline double dec(int n) { return kDecPerVar * n; }

enum class Cmp { Holds, Fails, Boundary };

/// Banded test of lhs <= rhs. Exact equality holds; otherwise a difference
/// inside cmp_band(lhs, rhs) is reported as Boundary.
inline Cmp compare_le(double lhs, double rhs) {
  if (lhs == rhs) return Cmp::Holds;
  const double diff = rhs - lhs;
  const double band = cmp_band(lhs, rhs);
  if (diff > band) return Cmp::Holds;
  if (diff < -band) return Cmp::Fails;
  return Cmp::Boundary;
}

}  // namespace gini::tol
