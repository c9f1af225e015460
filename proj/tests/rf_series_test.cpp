#include <gtest/gtest.h>

#include <cmath>

#include "rfsum/error.hpp"
#include "rfsum/rf_series.hpp"

namespace {

using namespace rfsum;

class RfSeries : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { tables_ = new SieveTables(build_sieve(200'000)); }
  static void TearDownTestSuite() {
    delete tables_;
    tables_ = nullptr;
  }
  static SieveTables* tables_;
};
SieveTables* RfSeries::tables_ = nullptr;

TEST(TailBound, FormulaAndRequiredQ) {
  EXPECT_DOUBLE_EQ(tail_bound(0.5, 3), 0.125);
  EXPECT_EQ(required_Q(0.9, 1e-6), 152u);
  EXPECT_LT(tail_bound(0.9, 152), 1e-6);
  EXPECT_GE(tail_bound(0.9, 151), 1e-6);
  EXPECT_EQ(required_Q(0.01, 0.5), 1u);
  EXPECT_THROW(tail_bound(1.0, 3), InvalidArgument);
  EXPECT_THROW(tail_bound(0.0, 3), InvalidArgument);
  EXPECT_THROW(required_Q(0.5, 0.0), InvalidArgument);
  EXPECT_THROW(required_Q(1.0 - 1e-17, 1e-300), InvalidArgument);
}

TEST(TailBound, RequiredQIsMinimalOnAGrid) {
  for (const double z : {0.1, 0.5, 0.9, 0.99, 0.999}) {
    for (const double eps : {1e-2, 1e-6, 1e-10, 1e-14}) {
      const auto Q = required_Q(z, eps);
      EXPECT_LT(tail_bound(z, Q), eps);
      if (Q > 1) {
        EXPECT_GE(tail_bound(z, Q - 1), eps) << z << " " << eps;
      }
    }
  }
}

TEST_F(RfSeries, IntegerAndRealPathsAgree) {
  for (const std::int64_t n : {1, 2, 9, 12, 97}) {
    const SeriesParams p{0.9, 400, 0.0};
    EXPECT_NEAR(lambda1_series(*tables_, p, n), lambda1_series(*tables_, p, static_cast<double>(n)),
                1e-10);
  }
}

TEST_F(RfSeries, TruncationErrorWithinTailBound) {
  for (const double z : {0.5, 0.9}) {
    const auto full = lambda1_series(*tables_, {z, required_Q(z, 1e-17), 0.0}, 2.5);
    for (const std::uint64_t Q : {5u, 20u, 80u}) {
      const auto part = lambda1_series(*tables_, {z, Q, 0.0}, 2.5);
      EXPECT_LE(std::fabs(full - part), tail_bound(z, Q) + 1e-12);
    }
  }
}

TEST_F(RfSeries, AbsoluteSeriesDominates) {
  const SeriesParams p{0.99, 2000, 0.0};
  EXPECT_GE(lambda1_series_abs(*tables_, p, 3.7), std::fabs(lambda1_series(*tables_, p, 3.7)));
}

TEST_F(RfSeries, ParameterChecks) {
  EXPECT_THROW(lambda1_series(*tables_, {0.9, 0, 0.0}, 1.0), InvalidArgument);
  EXPECT_THROW(lambda1_series(*tables_, {0.9, 300'000, 0.0}, 1.0), InvalidArgument);
  EXPECT_THROW(lambda1_series(*tables_, {1.2, 10, 0.0}, 1.0), InvalidArgument);
}

TEST_F(RfSeries, AbelLadderTrendsTowardsLambdaOne) {
  const auto trace = abel_ladder(*tables_, 9, kDefaultAbelLadder, kDefaultAbelEpsilon);
  ASSERT_EQ(trace.ladder.size(), 3u);
  ASSERT_TRUE(trace.target);
  EXPECT_NEAR(*trace.target, 0.7324081924454064, 1e-15);
  for (const auto& step : trace.ladder) {
    EXPECT_EQ(step.Q, required_Q(step.z, kDefaultAbelEpsilon));
    EXPECT_LT(step.tail, kDefaultAbelEpsilon);
  }
  const double first = std::fabs(trace.ladder.front().value - *trace.target);
  const double last = std::fabs(trace.ladder.back().value - *trace.target);
  EXPECT_LT(last, first);
}

TEST_F(RfSeries, AbelLadderValidation) {
  const double bad_order[] = {0.99, 0.9};
  EXPECT_THROW(abel_ladder(*tables_, 9, bad_order, 1e-6), InvalidArgument);
  EXPECT_THROW(abel_ladder(*tables_, 0, kDefaultAbelLadder, 1e-6), InvalidArgument);
  const auto real = abel_ladder_real(*tables_, 2.5, kDefaultAbelLadder, 1e-6);
  EXPECT_FALSE(real.target);
}

TEST_F(RfSeries, SigmaExpansionConverges) {
  for (const std::int64_t n : {1, 6, 12, 28, 50}) {
    const auto e = sigma_rf(*tables_, n, 100'000);
    EXPECT_NEAR(e.value, e.target, 0.05 * e.target) << n;
    ASSERT_TRUE(e.tail_bound);
    EXPECT_LE(std::fabs(e.value - e.target), *e.tail_bound);
    EXPECT_EQ(e.trace.back().first, 100'000u);
    EXPECT_EQ(e.trace.front().first, 1u);
  }
}

TEST_F(RfSeries, DivisorExpansionDiagnostics) {
  const auto e = divisor_rf(*tables_, 1, 2);
  EXPECT_NEAR(e.value, 0.34657359027997264, 1e-15);
  EXPECT_EQ(e.target, 1.0);
  EXPECT_FALSE(e.tail_bound);
}

TEST_F(RfSeries, CircleExpansionTargets) {
  EXPECT_EQ(lattice_points_in_disc(0), 1u);
  EXPECT_EQ(lattice_points_in_disc(1), 5u);
  EXPECT_EQ(lattice_points_in_disc(25), 81u);
  EXPECT_EQ(sum_of_two_squares_count(25), 12u);
  EXPECT_EQ(sum_of_two_squares_count(3), 0u);
  const auto e = circle_lattice_rf(*tables_, 5, 50'000);
  EXPECT_EQ(e.target, 21.0);
  ASSERT_TRUE(e.secondary_target);
  EXPECT_EQ(*e.secondary_target, 8.0);
  EXPECT_NEAR(e.value, *e.secondary_target, 0.05);
}

}  // namespace
