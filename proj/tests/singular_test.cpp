#include <gtest/gtest.h>

#include <cmath>

#include "rfsum/error.hpp"
#include "rfsum/singular.hpp"

namespace {

using namespace rfsum;

// Direct product prod_p (p/(p-1))^m (p - nu)/(p - 1) in plain doubles.
double tuple_direct(const std::vector<std::uint64_t>& offsets, std::uint64_t P) {
  const auto m = static_cast<double>(offsets.size() - 1);
  double prod = 1.0;
  for (const auto p : primes_up_to(P)) {
    const double pd = p;
    const auto nu = static_cast<double>(residue_count(offsets, p));
    prod *= std::pow(pd / (pd - 1.0), m) * (pd - nu) / (pd - 1.0);
  }
  return prod;
}

TEST(Singular, TwinConstant) {
  const auto c = twin_constant(1'000'000);
  EXPECT_NEAR(c.value, 0.6601618158, 1e-6);
  EXPECT_EQ(c.truncation_prime, 999'983u);
  EXPECT_NEAR(c.tail_estimate, 1e-6, 1e-9);
  EXPECT_EQ(c.form, ConstantForm::twin);
  EXPECT_THROW(twin_constant(2), InvalidArgument);
}

TEST(Singular, PairConstants) {
  EXPECT_NEAR(pair_constant(2).value, 1.3203236316, 1e-6);
  EXPECT_NEAR(pair_constant(6).value, 2.6406472632, 2e-6);
  EXPECT_NEAR(pair_constant(30).value, pair_constant(6).value * 4.0 / 3.0, 1e-12);
  EXPECT_EQ(pair_constant(4).value, pair_constant(2).value);
  EXPECT_EQ(pair_constant(10).parameters, "h=10");
  EXPECT_THROW(pair_constant(3), InvalidArgument);
  EXPECT_THROW(pair_constant(0), InvalidArgument);
}

TEST(Singular, ConjectureDValidation) {
  EXPECT_NO_THROW(validate_conjecture_d(1, 2, 1));
  EXPECT_NO_THROW(validate_conjecture_d(3, 2, 1));
  EXPECT_THROW(validate_conjecture_d(0, 2, 1), InvalidArgument);
  EXPECT_THROW(validate_conjecture_d(3, 6, 1), InvalidArgument);
  EXPECT_THROW(validate_conjecture_d(1, 3, 5), InvalidArgument);
  EXPECT_THROW(validate_conjecture_d(2, 1, 4), InvalidArgument);
  EXPECT_NEAR(conjecture_d_constant(1, 2, 1).value, 1.3203236316, 1e-6);
  EXPECT_NEAR(conjecture_d_constant(3, 2, 1).value, 0.8802157544, 1e-6);
}

TEST(Singular, TupleSpecs) {
  EXPECT_TRUE(make_tuple_spec({0, 2}).admissible);
  EXPECT_TRUE(make_tuple_spec({0, 2, 6}).admissible);
  const auto bad = make_tuple_spec({0, 1});
  EXPECT_FALSE(bad.admissible);
  EXPECT_EQ(bad.obstructing_prime, 2u);
  const auto bad3 = make_tuple_spec({0, 2, 4});
  EXPECT_FALSE(bad3.admissible);
  EXPECT_EQ(bad3.obstructing_prime, 3u);
  EXPECT_THROW(make_tuple_spec({1, 2}), InvalidArgument);
  EXPECT_THROW(make_tuple_spec({0, 4, 4}), InvalidArgument);
  EXPECT_THROW(tuple_constant(bad), InvalidArgument);
}

TEST(Singular, TupleConstantMatchesDirectProduct) {
  const auto twin = tuple_constant(make_tuple_spec({0, 2}), 100'000);
  EXPECT_NEAR(twin.value, pair_constant(2, 100'000).value, 1e-12);
  for (const auto& offs : {std::vector<std::uint64_t>{0, 2, 6}, std::vector<std::uint64_t>{0, 4, 6, 10}}) {
    const auto c = tuple_constant(make_tuple_spec(offs), 100'000);
    EXPECT_NEAR(c.value, tuple_direct(offs, 100'000), 1e-9 * c.value);
    EXPECT_TRUE(std::isfinite(c.tail_estimate));
  }
  EXPECT_TRUE(std::isinf(tuple_constant(make_tuple_spec({0, 2, 6}), 5).tail_estimate));
}

TEST(Singular, TupleTailEstimateCoversDeeperProduct) {
  const auto spec = make_tuple_spec({0, 2, 6});
  const auto shallow = tuple_constant(spec, 1000);
  const auto deep = tuple_constant(spec, 1'000'000);
  EXPECT_LE(std::fabs(std::log(deep.value) - std::log(shallow.value)), shallow.tail_estimate);
}

TEST(Singular, SeriesRearrangements) {
  // mu(2) c_2(h)/phi(2) = -1 for even h: the product has a zero factor.
  EXPECT_EQ(series_constant(2, 1000).value, 0.0);
  EXPECT_TRUE(std::isinf(series_constant(2, 1000).tail_estimate));
  EXPECT_GT(series_constant(1, 10'000).value, series_constant(1, 1000).value);
  for (const std::uint64_t h : {2u, 4u, 6u, 12u}) {
    EXPECT_NEAR(series_wk(h, 1'000'000).value, pair_constant(h, 1'000'000).value, 1e-12) << h;
  }
  EXPECT_EQ(series_wk(3, 1000).value, 0.0);
  EXPECT_EQ(to_string(ConstantForm::series_wk), "series_wk");
}

TEST(Singular, RawSeriesTrace) {
  const auto t = build_sieve(1000);
  const auto plain = raw_series_trace(t, 9, 1000, false);
  ASSERT_EQ(plain.size(), 4u);
  EXPECT_EQ(plain.back().first, 1000u);
  EXPECT_NEAR(plain.back().second, 0.7324081924454064, 0.05);
  const auto sq = raw_series_trace(t, 2, 1000, true);
  EXPECT_NEAR(sq.back().second, pair_constant(2).value, 0.05);
  EXPECT_THROW(raw_series_trace(t, 2, 1001, true), InvalidArgument);
}

}  // namespace
