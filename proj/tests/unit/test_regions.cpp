#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "gini/oracle.hpp"
#include "gini/regions.hpp"
#include "set_algebra.hpp"

namespace gini {
namespace {

using testing::Gen;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Interval, Validation) {
  EXPECT_THROW(Interval(2.0, 1.0), DomainError);
  EXPECT_THROW(Interval(-1.0, 1.0), DomainError);
  EXPECT_THROW(Interval(1.0, 1.0), DomainError);
  EXPECT_THROW(Interval(kInf, kInf), DomainError);
  EXPECT_NO_THROW(Interval(0.0, kInf));
  EXPECT_EQ(Interval(2.0, 8.0).theta(), 0.25);
  EXPECT_EQ(Interval(0.0, 8.0).theta(), 0.0);
  EXPECT_EQ(Interval(2.0, kInf).theta(), 0.0);
}

TEST(Canonicalize, Examples) {
  const Interval c = canonicalize(Interval(2.0, 6.0));
  EXPECT_DOUBLE_EQ(c.a(), 1.0 / 3.0);
  EXPECT_EQ(c.b(), 1.0);
  const Interval z = canonicalize(Interval(0.0, 5.0));
  EXPECT_EQ(z.a(), 0.0);
  EXPECT_TRUE(std::isinf(z.b()));
  for (double k : {1.5, 2.0, 10.0, 1e6}) EXPECT_DOUBLE_EQ(canonicalize(Interval(3.0, 3.0 * k)).a(), 1.0 / k);
  EXPECT_LT(canonicalize(Interval(1.0, std::nextafter(1.0, 2.0))).a(), 1.0);
}

TEST(Gamma2, Examples) {
  const Interval reals = Interval::positive_reals();
  EXPECT_EQ(in_gamma2({{0, 0}, {2, -1}}, reals).status, Status::Member);
  const Verdict am_gm = in_gamma2({{1, 0}, {0, 0}}, reals);
  ASSERT_EQ(am_gm.status, Status::NonMember);
  EXPECT_EQ(am_gm.failed_condition, "sum");
  ASSERT_TRUE(am_gm.witness);
  EXPECT_EQ(am_gm.witness->size(), 2u);
  EXPECT_TRUE(is_violation({{1, 0}, {0, 0}}, *am_gm.witness));

  Gen g(41);
  for (int k = 0; k < 200; ++k) {
    const ParamPair pq = g.pair();
    const Verdict v = in_gamma2({pq, pq.swapped()}, Interval(1.0, g.log_uniform(1.01, 100)));
    EXPECT_EQ(v.status, Status::Member);
    EXPECT_EQ(v.failed_condition, "reflexive");
  }
}

TEST(Gamma2, BoundedWitnessLiesInInterval) {
  const Interval I(3.0, 5.0);
  const Verdict v = in_gamma2({{1, 0}, {0, 0}}, I);
  ASSERT_EQ(v.status, Status::NonMember);
  ASSERT_TRUE(v.witness);
  for (double x : *v.witness) {
    EXPECT_GE(x, 3.0 * (1 - 1e-15));
    EXPECT_LE(x, 5.0 * (1 + 1e-15));
  }
  EXPECT_TRUE(is_violation({{1, 0}, {0, 0}}, *v.witness));
}

TEST(Gamma2, EndpointConditionCarriesEndpoints) {
  // r + s = p + q = 2, but G_{1,1} exceeds G_{2,0} at (1/2, 1).
  const Verdict v = in_gamma2({{1, 1}, {2, 0}}, Interval(1.0, 2.0));
  ASSERT_EQ(v.status, Status::NonMember);
  EXPECT_EQ(v.failed_condition, "endpoint_mean");
  ASSERT_TRUE(v.witness);
  EXPECT_DOUBLE_EQ((*v.witness)[0], 1.0);
  EXPECT_DOUBLE_EQ((*v.witness)[1], 2.0);
}

TEST(GammaInf, Examples) {
  const Interval reals = Interval::positive_reals();
  EXPECT_EQ(in_gamma_inf({{0, 0}, {1, 0}}, reals).status, Status::Member);
  const Verdict v = in_gamma_inf({{3, 0}, {2, 1}}, reals);
  EXPECT_EQ(v.status, Status::NonMember);
  EXPECT_EQ(v.failed_condition, "max");
  if (v.witness) EXPECT_TRUE(is_violation({{3, 0}, {2, 1}}, *v.witness));
  EXPECT_EQ(in_gamma_inf({{1.5, -2}, {-2, 1.5}}, Interval(1, 2)).status, Status::Member);
}

TEST(GammaInf, WitnessesVerify) {
  Gen g(42);
  int with_witness = 0;
  for (int k = 0; k < 300; ++k) {
    const ComparisonQuad q = g.quad();
    const Interval I = g.coin() ? Interval(1.0, g.log_uniform(1.1, 10)) : Interval::positive_reals();
    const Verdict v = in_gamma_inf(q, I);
    if (v.status == Status::NonMember && v.witness) {
      ++with_witness;
      EXPECT_TRUE(is_violation(q, *v.witness));
    }
  }
  EXPECT_GT(with_witness, 50);
}

TEST(Regions, InconclusiveOnBand) {
  // r + s equals p + q up to one ulp, on the unbounded interval where the
  // sum is the binding condition.
  const double p = 0.1 + 0.2;
  const Verdict v = in_gamma2({{0.3, 0.0}, {p, 0.0}}, Interval::positive_reals());
  EXPECT_EQ(v.status, Status::Inconclusive);
}

TEST(SetAlgebra, SmallSample) {
  for (const auto& r : testing::run_set_algebra(200, 43)) {
    EXPECT_GT(r.checked, 0) << r.name;
    EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
  }
}

}  // namespace
}  // namespace gini
