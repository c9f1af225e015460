#pragma once

// Empirical means (1/N) sum_{n<=N} f(n) with a convergence trace, and the
// exact period means that are their N -> infinity limits when f is periodic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfsum/arith_sieve.hpp"
#include "rfsum/compensated.hpp"
#include "rfsum/parallel.hpp"
#include "rfsum/singular.hpp"

namespace rfsum {

// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(const Rational& r);

struct MeanValueReport {
  std::string label;
  std::uint64_t N = 0;
  double empirical = 0.0;
  std::optional<double> predicted;
  std::optional<double> abs_gap;
  std::optional<double> rel_gap;  // absent when predicted is absent or zero
  // (N_i, mean over 1..N_i) at N_i = i N / 10, i = 1..10 (zero and repeated
  // checkpoints dropped); the last entry is (N, empirical).
  std::vector<std::pair<std::uint64_t, double>> trace;
  // Limit over one full period, where the summand is periodic.
  std::optional<Rational> exact_period_mean;
  // Partial-period remainder bound max|f| * period / N, where it applies.
  std::optional<double> remainder_bound;

  void set_predicted(double value);
};

// Weight applied to prime powers.
enum class Weight { lambda, lambda1 };
std::string to_string(Weight w);

// Deterministic mean of summand(n) over 1..N. The range is split at the
// trace checkpoints and then into blocks of options.block_size; blocks are
// summed with compensation on any number of threads and combined in
// ascending order, so the result does not depend on options.threads.
template <typename Summand>
MeanValueReport empirical_mean(std::uint64_t N, Summand&& summand, const ReduceOptions& options);

// (1/N) sum c_q(n); exact period mean (1/q) sum_{n=1}^{q} c_q(n) = [q = 1].
MeanValueReport cq_mean(const SieveTables& tables, std::int64_t q, std::uint64_t N,
                        const ReduceOptions& options = {});

// (1/N) sum c_r(n) c_s(n + m); exact mean over lcm(r, s) equals c_r(m) [r = s].
MeanValueReport cq_orthogonality(const SieveTables& tables, std::int64_t r, std::int64_t s,
                                 std::int64_t m, std::uint64_t N,
                                 const ReduceOptions& options = {});

// Shifted autocorrelation (1/N) sum w(n) w(n + h). Even h is compared with
// pair_constant(h); odd h is handed to odd_gap_mean. Needs N + h <= bound.
MeanValueReport pair_autocorrelation(const SieveTables& tables, std::uint64_t h, std::uint64_t N,
                                     Weight weight = Weight::lambda1,
                                     const ReduceOptions& options = {});

// Same sum for odd h; predicted 0.
MeanValueReport odd_gap_mean(const SieveTables& tables, std::uint64_t h, std::uint64_t N,
                             Weight weight = Weight::lambda1, const ReduceOptions& options = {});

// (1/N) sum_{n<=N, a | bn+l} w(n) w((bn+l)/a) against conjecture_d_constant.
// Needs max(N, (bN + l)/a) <= bound.
MeanValueReport conjecture_d_mean(const SieveTables& tables, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t l, std::uint64_t N,
                                  Weight weight = Weight::lambda1,
                                  const ReduceOptions& options = {});

struct TupleMeanResult {
  MeanValueReport lambda;   // Lambda-weighted product
  MeanValueReport lambda1;  // Lambda_1-weighted product
  SingularConstant constant;
};

// (1/N) sum prod_i w(n + o_i) for both weights, against tuple_constant at
// prime_bound. Needs N + max offset <= bound.
TupleMeanResult tuple_mean(const SieveTables& tables, const TupleSpec& spec, std::uint64_t N,
                           const ReduceOptions& options = {},
                           std::uint64_t prime_bound = kDefaultPrimeBound);

// (1/N) sum w(n); predicted 1.
MeanValueReport pnt_mean(const SieveTables& tables, std::uint64_t N,
                         Weight weight = Weight::lambda1, const ReduceOptions& options = {});
// Lambda_1 variant fed by SegmentedLambdaStream; no tables needed.
MeanValueReport pnt_mean_streamed(std::uint64_t N, std::uint64_t segment_size = kDefaultSegmentSize);

// (1/N) sum c_q(f(n)) for f with integer coefficients, highest degree first.
// The exact limit (1/q) sum_{r=0}^{q-1} c_q(f(r)) is the prediction.
MeanValueReport polynomial_cq_mean(const SieveTables& tables, std::int64_t q,
                                   std::span<const std::int64_t> poly, std::uint64_t N,
                                   const ReduceOptions& options = {});

// f(n) mod q for coefficients highest degree first, result in [0, q).
std::int64_t poly_mod(std::span<const std::int64_t> poly, std::int64_t n, std::int64_t q);

// sum_{n=1}^{2N} c_{q1}(n) c_{q2}(2N - n), exactly.
std::int64_t goldbach_correlation(const SieveTables& tables, std::uint64_t N, std::int64_t q1,
                                  std::int64_t q2);

// --- implementation -------------------------------------------------------

namespace detail {
std::vector<std::uint64_t> trace_checkpoints(std::uint64_t N);
}

template <typename Summand>
MeanValueReport empirical_mean(std::uint64_t N, Summand&& summand, const ReduceOptions& options) {
  MeanValueReport report;
  report.N = N;
  if (N == 0) return report;
  const std::uint64_t block = std::max<std::uint64_t>(1, options.block_size);

  struct Block {
    std::uint64_t lo, hi;  // inclusive
    bool ends_checkpoint;
  };
  std::vector<Block> blocks;
  std::uint64_t start = 1;
  for (const std::uint64_t cp : detail::trace_checkpoints(N)) {
    for (std::uint64_t lo = start; lo <= cp; lo += block) {
      const std::uint64_t hi = std::min(cp, lo + block - 1);
      blocks.push_back({lo, hi, hi == cp});
    }
    start = cp + 1;
  }

  std::vector<CompensatedSum> partial(blocks.size());
  parallel_for_index(blocks.size(), options.threads, [&](std::size_t i) {
    CompensatedSum s;
    for (std::uint64_t n = blocks[i].lo; n <= blocks[i].hi; ++n) s.add(summand(n));
    partial[i] = s;
  });

  CompensatedSum total;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    total.merge(partial[i]);
    if (blocks[i].ends_checkpoint) {
      report.trace.emplace_back(blocks[i].hi, total.value() / static_cast<double>(blocks[i].hi));
    }
  }
  report.empirical = report.trace.back().second;
  return report;
}

}  // namespace rfsum
