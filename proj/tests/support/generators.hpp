#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gini/types.hpp"

namespace gini::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  ParamPair pair(double lo = -8.0, double hi = 8.0) { return {uniform(lo, hi), uniform(lo, hi)}; }
  ComparisonQuad quad(double lo = -4.0, double hi = 4.0) { return {pair(lo, hi), pair(lo, hi)}; }

  std::vector<double> sample(int n, double lo, double hi) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = log_uniform(lo, hi);
    return x;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gini::testing
