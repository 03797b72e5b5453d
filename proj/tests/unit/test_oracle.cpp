#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "gini/oracle.hpp"

namespace gini {
namespace {

using testing::Gen;

GridSpec grid(int n, int resolution) {
  GridSpec s;
  s.interval = Interval(1.0, 2.0);
  s.n = n;
  s.resolution = resolution;
  return s;
}

TEST(GridRefute, ReflexiveHasNoViolation) {
  Gen g(51);
  for (int k = 0; k < 20; ++k) {
    const ParamPair pq = g.pair();
    EXPECT_FALSE(grid_refute({pq, pq}, grid(3, 16)));
    EXPECT_FALSE(grid_refute({pq, pq.swapped()}, grid(2, 64)));
  }
}

TEST(GridRefute, ArithmeticAboveGeometric) {
  const auto w = grid_refute({{1, 0}, {0, 0}}, grid(2, 32));
  ASSERT_TRUE(w);
  EXPECT_NE((*w)[0], (*w)[1]);
  EXPECT_TRUE(is_violation({{1, 0}, {0, 0}}, *w));
  EXPECT_FALSE(grid_refute({{0, 0}, {1, 0}}, grid(3, 64)));
}

TEST(GridRefute, ScansSortedTuplesOnCanonicalInterval) {
  const auto w = grid_refute({{1, 0}, {0, 0}}, grid(3, 8));
  ASSERT_TRUE(w);
  EXPECT_TRUE(std::is_sorted(w->begin(), w->end()));
  EXPECT_GE(w->front(), 0.5);
  EXPECT_LE(w->back(), 1.0);
}

TEST(GridRefute, Limits) {
  EXPECT_THROW(grid_refute({{1, 0}, {0, 0}}, grid(6, 100)), ResourceError);
  GridSpec unbounded = grid(2, 8);
  unbounded.interval = Interval::positive_reals();
  EXPECT_THROW(grid_refute({{1, 0}, {0, 0}}, unbounded), DomainError);
  EXPECT_THROW(grid_refute({{1, 0}, {0, 0}}, grid(2, 1)), DomainError);
}

TEST(GridRefute, RandomExtraIsDeterministic) {
  GridSpec s = grid(3, 2);
  s.random_extra = 500;
  s.rng_seed = 9;
  const ComparisonQuad q{{2, 1}, {3, 0}};
  const auto first = grid_refute(q, s);
  const auto second = grid_refute(q, s);
  EXPECT_EQ(first, second);
  if (first) EXPECT_TRUE(is_violation(q, *first));
}

// The power-sum screen must never hide a violation the direct check sees.
TEST(GridRefute, ScreenMatchesDirectScan) {
  Gen g(52);
  for (int k = 0; k < 150; ++k) {
    const ComparisonQuad q = g.quad();
    const GridSpec s = grid(2, 24);
    const auto w = grid_refute(q, s);
    bool direct = false;
    for (int i = 0; i < s.resolution && !direct; ++i) {
      for (int j = i; j < s.resolution && !direct; ++j) {
        const double a = std::exp(std::log(0.5) * (1.0 - i / 23.0));
        const double b = std::exp(std::log(0.5) * (1.0 - j / 23.0));
        const std::vector<double> x{a, b};
        direct = violation_margin(q, x) > 1e-9;
      }
    }
    if (direct) EXPECT_TRUE(w.has_value());
    if (w) EXPECT_TRUE(is_violation(q, *w));
  }
}

TEST(PairRefute, FindsLargestPairViolation) {
  const auto w = pair_refute({{1, 0}, {0, 0}}, 0.5);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 2u);
  EXPECT_DOUBLE_EQ((*w)[0], 0.5);
  EXPECT_FALSE(pair_refute({{0, 0}, {1, 0}}, 0.5));
  EXPECT_THROW(pair_refute({{1, 0}, {0, 0}}, 0.0), DomainError);
}

TEST(TwoLevelRefute, ShortestVector) {
  const auto w = two_level_refute({{1, 0}, {0, 0}}, 0.5);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 2u);
  EXPECT_FALSE(two_level_refute({{0, 0}, {1, 0}}, 0.5, 16));
}

}  // namespace
}  // namespace gini
