#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "rfsum/error.hpp"
#include "rfsum/mean_values.hpp"
#include "rfsum/ramanujan.hpp"

namespace {

using namespace rfsum;

class MeanValues : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { tables_ = new SieveTables(build_sieve(200'100)); }
  static void TearDownTestSuite() {
    delete tables_;
    tables_ = nullptr;
  }
  static SieveTables* tables_;
};
SieveTables* MeanValues::tables_ = nullptr;

TEST(RationalTest, ReducesAndPrints) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(6, -4)), "-3/2");
  EXPECT_EQ(to_string(Rational(0, 7)), "0");
  EXPECT_EQ(to_string(Rational(8, 4)), "2");
  EXPECT_THROW(Rational(1, 0), InvalidArgument);
}

TEST(TraceCheckpoints, TenthsWithoutRepeats) {
  EXPECT_EQ(detail::trace_checkpoints(100),
            (std::vector<std::uint64_t>{10, 20, 30, 40, 50, 60, 70, 80, 90, 100}));
  EXPECT_EQ(detail::trace_checkpoints(3), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(detail::trace_checkpoints(1), (std::vector<std::uint64_t>{1}));
}

TEST_F(MeanValues, CqMean) {
  const auto one = cq_mean(*tables_, 1, 12345);
  EXPECT_EQ(one.empirical, 1.0);
  EXPECT_EQ(*one.exact_period_mean, Rational(1, 1));
  EXPECT_EQ(*cq_mean(*tables_, 6, 6).exact_period_mean, Rational(0, 1));
  const auto four = cq_mean(*tables_, 4, 100'000);
  EXPECT_LE(std::fabs(four.empirical), 2.0 * 4.0 / 100'000);
  EXPECT_FALSE(four.rel_gap);
  EXPECT_EQ(four.empirical, four.trace.back().second);
}

TEST_F(MeanValues, Orthogonality) {
  EXPECT_EQ(*cq_orthogonality(*tables_, 3, 3, 1, 9).exact_period_mean, Rational(-1, 1));
  for (std::int64_t m = -4; m <= 4; ++m) {
    EXPECT_EQ(*cq_orthogonality(*tables_, 2, 3, m, 9).exact_period_mean, Rational(0, 1));
  }
  EXPECT_EQ(*cq_orthogonality(*tables_, 1, 1, 0, 9).exact_period_mean, Rational(1, 1));
  const auto rep = cq_orthogonality(*tables_, 6, 6, 2, 100'000);
  EXPECT_LE(*rep.abs_gap, *rep.remainder_bound);
}

TEST_F(MeanValues, SmallNByHand) {
  const auto pnt = pnt_mean(*tables_, 10);
  EXPECT_NEAR(pnt.empirical, 0.5460010470582566, 1e-15);
  EXPECT_EQ(pnt_mean(*tables_, 1).empirical, 0.0);
  EXPECT_NEAR(pair_autocorrelation(*tables_, 2, 10).empirical, 0.6028841040847361, 1e-15);
  EXPECT_NEAR(pair_autocorrelation(*tables_, 1, 10).empirical, 0.1785789008123661, 1e-15);
  EXPECT_NEAR(pair_autocorrelation(*tables_, 3, 10).empirical, 0.2226017368956395, 1e-15);
}

TEST_F(MeanValues, AutocorrelationAgainstConstant) {
  const auto two = pair_autocorrelation(*tables_, 2, 200'000);
  EXPECT_NEAR(*two.predicted, 1.3203236316, 1e-6);
  EXPECT_LT(*two.rel_gap, 0.10);
  EXPECT_EQ(two.label, "autocorr:h=2:lambda1");
  const auto odd = pair_autocorrelation(*tables_, 5, 200'000);
  EXPECT_EQ(*odd.predicted, 0.0);
  EXPECT_LT(odd.empirical, 0.01);
  const auto raw = pair_autocorrelation(*tables_, 2, 200'000, Weight::lambda);
  EXPECT_GT(raw.empirical, two.empirical);
  EXPECT_EQ(raw.label, "autocorr:h=2:lambda");
}

TEST_F(MeanValues, ShrinksFromThousandToLarger) {
  const auto small = pair_autocorrelation(*tables_, 2, 1000);
  const auto big = pair_autocorrelation(*tables_, 2, 200'000);
  EXPECT_LT(*big.abs_gap, *small.abs_gap);
}

TEST_F(MeanValues, ConjectureD) {
  const auto twins = conjecture_d_mean(*tables_, 1, 1, 2, 100'000);
  const auto pair = pair_autocorrelation(*tables_, 2, 100'000);
  EXPECT_EQ(twins.empirical, pair.empirical);
  EXPECT_EQ(twins.trace, pair.trace);
  EXPECT_NEAR(*conjecture_d_mean(*tables_, 3, 2, 1, 10).predicted, 0.8802157544, 1e-6);
  EXPECT_THROW(conjecture_d_mean(*tables_, 2, 4, 1, 10), InvalidArgument);
  EXPECT_THROW(conjecture_d_mean(*tables_, 1, 3, 5, 10), InvalidArgument);
  EXPECT_THROW(conjecture_d_mean(*tables_, 1, 2, 1, 200'000), InvalidArgument);
  // a > b: the n side of the product is the binding constraint
  EXPECT_THROW(conjecture_d_mean(*tables_, 3, 2, 1, 250'000), InvalidArgument);
}

TEST_F(MeanValues, ConjectureDFilterMatchesDirectLoop) {
  const std::uint64_t a = 3, b = 2, l = 1, N = 5000;
  double sum = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if ((b * n + l) % a == 0) sum += tables_->lambda1(n) * tables_->lambda1((b * n + l) / a);
  }
  EXPECT_NEAR(conjecture_d_mean(*tables_, a, b, l, N).empirical, sum / N, 1e-13);
}

TEST_F(MeanValues, TupleMean) {
  const auto twin = tuple_mean(*tables_, make_tuple_spec({0, 2}), 100'000, {}, 100'000);
  EXPECT_NEAR(twin.constant.value, 1.3203236316, 1e-4);
  EXPECT_EQ(twin.lambda1.empirical, pair_autocorrelation(*tables_, 2, 100'000).empirical);
  EXPECT_LT(*twin.lambda.rel_gap, 0.10);
  const auto triple = tuple_mean(*tables_, make_tuple_spec({0, 2, 6}), 100'000, {}, 100'000);
  EXPECT_GT(triple.lambda.empirical, 0.0);
  EXPECT_EQ(*triple.lambda.predicted, triple.constant.value);
  EXPECT_THROW(tuple_mean(*tables_, make_tuple_spec({0, 1}), 100), InvalidArgument);
}

TEST_F(MeanValues, PntStreamMatchesTables) {
  for (const std::uint64_t N : {1ull, 10ull, 99'999ull, 200'000ull}) {
    const auto a = pnt_mean(*tables_, N);
    const auto b = pnt_mean_streamed(N, 4096);
    EXPECT_EQ(a.empirical, b.empirical) << N;
    EXPECT_EQ(a.trace, b.trace) << N;
  }
}

TEST_F(MeanValues, PolynomialMeans) {
  const std::int64_t n2p1[] = {1, 0, 1};
  EXPECT_EQ(*polynomial_cq_mean(*tables_, 5, n2p1, 10).exact_period_mean, Rational(1, 1));
  const std::int64_t any[] = {3, -7, 2};
  EXPECT_EQ(*polynomial_cq_mean(*tables_, 1, any, 10).exact_period_mean, Rational(1, 1));
  const auto four = polynomial_cq_mean(*tables_, 4, n2p1, 100'000);
  EXPECT_LE(*four.abs_gap, 2.0 * 4.0 / 100'000);
  EXPECT_EQ(poly_mod(n2p1, 7, 5), 0);
  const std::int64_t neg[] = {-1, 0, -1};
  EXPECT_EQ(poly_mod(neg, 2, 5), 0);
  EXPECT_EQ(poly_mod(neg, 1, 5), 3);
  EXPECT_THROW(polynomial_cq_mean(*tables_, 300'000, n2p1, 10), InvalidArgument);
}

TEST_F(MeanValues, Goldbach) {
  EXPECT_EQ(goldbach_correlation(*tables_, 7, 1, 1), 14);
  EXPECT_EQ(goldbach_correlation(*tables_, 3, 2, 2), 6);
  EXPECT_EQ(goldbach_correlation(*tables_, 3, 2, 3), 0);
  EXPECT_EQ(goldbach_correlation(*tables_, 5, 4, 6), 2);
}

TEST_F(MeanValues, ThreadAndBlockInvariance) {
  const auto base = pair_autocorrelation(*tables_, 6, 150'000, Weight::lambda1, {1, 1u << 16});
  for (const unsigned threads : {2u, 3u, 8u}) {
    const auto other =
        pair_autocorrelation(*tables_, 6, 150'000, Weight::lambda1, {threads, 1u << 16});
    EXPECT_EQ(base.empirical, other.empirical) << threads;
    EXPECT_EQ(base.trace, other.trace);
  }
  for (const std::uint64_t block : {1ull, 17ull, 1000ull, 1ull << 20}) {
    const auto other = pair_autocorrelation(*tables_, 6, 150'000, Weight::lambda1, {4, block});
    EXPECT_NEAR(base.empirical, other.empirical, 1e-10) << block;
  }
}

}  // namespace
