#include <gtest/gtest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gini/conjectures.hpp"
#include "gini/oracle.hpp"
#include "gini/parallel.hpp"
#include "gini/regions.hpp"
#include "gini/solver.hpp"
#include "reference.hpp"

namespace gini {
namespace {

TEST(Conjecture1, Examples) {
  const Interval I(1, 2);
  EXPECT_EQ(conjecture1_verdict({{1, 2}, {2, 1}}, I, 3).status, Status::Member);
  const Verdict sum = conjecture1_verdict({{2, 1}, {1, 1}}, I, 3);
  EXPECT_EQ(sum.status, Status::NonMember);
  EXPECT_EQ(sum.failed_condition, "sum");
  EXPECT_EQ(conjecture1_verdict({{0, 0}, {1, 0}}, I, 3).status, Status::Member);
  EXPECT_THROW(conjecture1_verdict({{0, 0}, {1, 0}}, Interval::positive_reals(), 3), DomainError);
  EXPECT_THROW(conjecture1_verdict({{0, 0}, {1, 0}}, I, 2), DomainError);
}

TEST(Conjecture1, EndpointWitnessInInterval) {
  // r + s = p + q; the endpoint means decide.
  const ComparisonQuad q{{1, 1}, {2, 0}};
  const Verdict v = conjecture1_verdict(q, Interval(3, 6), 3);
  ASSERT_EQ(v.status, Status::NonMember);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(is_violation(q, *v.witness));
  EXPECT_EQ(v.witness->size(), 3u);
  for (double x : *v.witness) EXPECT_TRUE(x == 3.0 || x == 6.0);
}

TEST(Conjecture1, GammaInfImpliesConjecturedMember) {
  QuadSampler s;
  s.filter = false;
  s.count = 2000;
  s.seed = 3;
  const Interval I(1, 2);
  for (const ComparisonQuad& q : sample_quads(s, I)) {
    if (in_gamma_inf(q, I).status != Status::Member) continue;
    EXPECT_NE(conjecture1_verdict(q, I, 3).status, Status::NonMember);
    EXPECT_NE(conjecture1_verdict(q, I, 5).status, Status::NonMember);
  }
}

// Found by the c1 sweep (n = 3, [1,2], seed 7). The three conjectured
// conditions hold but a two-level vector (t, t, 2) violates the comparison.
TEST(Conjecture1, SweepCounterexample) {
  const ComparisonQuad q{{-0.3779435359684751, 3.0527776175082852}, {2.7993241619120575, -0.12355113023819708}};
  const Interval I(1, 2);
  EXPECT_EQ(conjecture1_verdict(q, I, 3).status, Status::Member);
  const std::vector<double> x{1.3690290663843, 1.3690290663843, 2.0};
  const long double lower = testing::naive_gini_mean(q.lower, x);
  const long double upper = testing::naive_gini_mean(q.upper, x);
  EXPECT_GT((lower - upper) / upper, 1e-4L);
  EXPECT_EQ(decide_gamma_n(q, I, 3).status, Status::NonMember);
}

TEST(Sampler, FiltersAndIsDeterministic) {
  QuadSampler s;
  s.count = 30;
  s.seed = 4;
  const Interval I(1, 2);
  const auto a = sample_quads(s, I);
  EXPECT_EQ(a, sample_quads(s, I));
  ASSERT_EQ(a.size(), 30u);
  for (const auto& q : a) {
    EXPECT_EQ(in_gamma2(q, I).status, Status::Member);
    EXPECT_EQ(in_gamma_inf(q, I).status, Status::NonMember);
  }
  s.max_draws = 3;
  EXPECT_LE(sample_quads(s, I).size(), 3u);
}

TEST(Conjecture1Sweep, Bookkeeping) {
  QuadSampler s;
  s.count = 20;
  s.seed = 5;
  const ConjectureReport r = run_conjecture1_sweep(Interval(1, 2), 3, s);
  EXPECT_EQ(r.conjecture_id, "C1");
  EXPECT_EQ(r.quads_tested, 20);
  EXPECT_EQ(r.agree + static_cast<int>(r.disagree.size()) + r.inconclusive, r.quads_tested);
  EXPECT_EQ(r.necessity_failures, 0);
  s.count = 0;
  const ConjectureReport empty = run_conjecture1_sweep(Interval(1, 2), 3, s);
  EXPECT_EQ(empty.quads_tested, 0);
  EXPECT_EQ(empty.agree, 0);
}

TEST(Conjecture1Sweep, ThreadCountDoesNotChangeReport) {
  QuadSampler s;
  s.count = 12;
  s.seed = 6;
  const ConjectureReport one = run_conjecture1_sweep(Interval(1, 2), 3, s, {}, 1);
  const ConjectureReport four = run_conjecture1_sweep(Interval(1, 2), 3, s, {}, 4);
  EXPECT_EQ(one.agree, four.agree);
  EXPECT_EQ(one.inconclusive, four.inconclusive);
  EXPECT_EQ(one.disagree.size(), four.disagree.size());
}

TEST(ConjectureM2, ReflexiveAndGammaInf) {
  const M2Entry refl = conjectureM2_check({{1, -1}, {-1, 1}}, 3, 1e-2);
  EXPECT_EQ(refl.reference, Status::Member);
  EXPECT_EQ(refl.violating, 0);
  const M2Entry am_gm = conjectureM2_check({{0, 0}, {1, 0}}, 3, 1e-2);
  EXPECT_EQ(am_gm.gamma_inf, Status::Member);
  EXPECT_EQ(am_gm.violating, 0);
  EXPECT_TRUE(am_gm.necessity_ok);
}

TEST(ConjectureM2, WitnessVerifies) {
  const ComparisonQuad q{{1, 0}, {2, -1}};
  const M2Entry e = conjectureM2_check(q, 3, 1e-2);
  EXPECT_TRUE(e.necessity_ok);
  if (e.witness) EXPECT_TRUE(is_violation(q, *e.witness));
}

TEST(ConjectureM2Sweep, Bookkeeping) {
  QuadSampler s;
  s.count = 8;
  s.seed = 7;
  std::vector<M2Entry> entries;
  const ConjectureReport r = run_conjectureM2_sweep(3, 1e-2, s, 1, &entries);
  EXPECT_EQ(r.conjecture_id, "M2");
  EXPECT_EQ(entries.size(), 8u);
  EXPECT_EQ(r.agree + static_cast<int>(r.disagree.size()) + r.inconclusive, r.quads_tested);
  EXPECT_LE(r.vacuous, r.inconclusive);
  EXPECT_EQ(r.necessity_failures, 0);
}

TEST(ParallelFor, CoversEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t i) {
                              if (i == 42) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace gini
