#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "rfsum/error.hpp"
#include "rfsum/ramanujan.hpp"

namespace {

using namespace rfsum;

class Ramanujan : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { tables_ = new SieveTables(build_sieve(10'000)); }
  static void TearDownTestSuite() {
    delete tables_;
    tables_ = nullptr;
  }
  static SieveTables* tables_;
};
SieveTables* Ramanujan::tables_ = nullptr;

TEST_F(Ramanujan, SmallTableValues) {
  const CqEvaluator c(*tables_);
  // c_6(n) for n = 1..6
  const std::int64_t expected[] = {1, -1, -2, -1, 1, 2};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(c(6, n), expected[n - 1]) << n;
  EXPECT_EQ(c(12, 8), -2);
  EXPECT_EQ(c(4, 2), -2);
  EXPECT_EQ(c(1, 17), 1);
  EXPECT_EQ(c(0, 5), 1);
  EXPECT_EQ(c(9, 0), 6);
}

TEST_F(Ramanujan, ClosedFormMatchesExponentialSum) {
  const CqEvaluator c(*tables_);
  for (std::int64_t q = 1; q <= 60; ++q) {
    for (std::int64_t n = -120; n <= 120; ++n) {
      ASSERT_EQ(c(q, n), direct_ramanujan_sum(q, n)) << "q=" << q << " n=" << n;
    }
  }
  EXPECT_EQ(c(9973, 9973), 9972);
  EXPECT_EQ(c(9973, 1), -1);
}

TEST_F(Ramanujan, RangeChecks) {
  const CqEvaluator c(*tables_, 50);
  EXPECT_THROW(c(-1, 3), InvalidArgument);
  EXPECT_THROW(c(10'001, 3), InvalidArgument);
  EXPECT_THROW(c.direct(51, 3), InvalidArgument);
  EXPECT_THROW(c.direct(0, 3), InvalidArgument);
  EXPECT_EQ(c.direct(-12, 8), c(12, 8));
  EXPECT_THROW(CqEvaluator(*tables_, 0), InvalidArgument);
  EXPECT_THROW(direct_ramanujan_sum(0, 1), InvalidArgument);
}

TEST(RamanujanReal, AgreesWithIntegerValues) {
  for (std::uint64_t q = 1; q <= 40; ++q) {
    for (std::int64_t n = -30; n <= 30; ++n) {
      EXPECT_NEAR(cq_real(q, static_cast<double>(n)),
                  static_cast<double>(direct_ramanujan_sum(static_cast<std::int64_t>(q), n)), 1e-9)
          << q << " " << n;
    }
  }
}

TEST(RamanujanReal, LowOrderCases) {
  EXPECT_EQ(cq_real(0, 0.3), 1.0);
  EXPECT_NEAR(cq_real(1, 0.25), 0.0, 1e-15);
  EXPECT_NEAR(cq_real(2, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(cq_real(3, 0.5), 2.0 * std::cos(std::numbers::pi / 3.0), 1e-15);
  EXPECT_EQ(cq_real(7, 1.3), cq_real(7, -1.3));
}

TEST_F(Ramanujan, PropertyCatalogPasses) {
  const auto report = check_property_catalog(*tables_, 30, 100);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed()) << c.id << ": " << c.witness;
    EXPECT_GT(c.cases, 0u) << c.id;
  }
  EXPECT_TRUE(report.all_passed());
  EXPECT_EQ(report.failure_count(), 0u);
  EXPECT_FALSE(report.notes.empty());
}

TEST_F(Ramanujan, PropertyCatalogNeedsLargeEnoughTables) {
  EXPECT_THROW(check_property_catalog(*tables_, 200, 100), InvalidArgument);
}

}  // namespace
