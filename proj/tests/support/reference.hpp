#pragma once

#include <cmath>
#include <span>

#include "gini/types.hpp"

namespace gini::testing {

// Textbook formula in long double, no log-domain tricks. Unreliable for
// |p - q| tiny or extreme exponents; callers restrict their inputs.
inline long double naive_gini_mean(ParamPair pq, std::span<const double> x) {
  const long double p = pq.p;
  const long double q = pq.q;
  long double sp = 0.0L;
  long double sq = 0.0L;
  if (pq.p == pq.q) {
    long double sl = 0.0L;
    for (double v : x) {
      const long double w = std::pow(static_cast<long double>(v), p);
      sp += w;
      sl += w * std::log(static_cast<long double>(v));
    }
    return std::exp(sl / sp);
  }
  for (double v : x) {
    sp += std::pow(static_cast<long double>(v), p);
    sq += std::pow(static_cast<long double>(v), q);
  }
  return std::pow(sp / sq, 1.0L / (p - q));
}

}  // namespace gini::testing
