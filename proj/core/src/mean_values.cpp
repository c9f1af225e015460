#include "rfsum/mean_values.hpp"

#include <cmath>
#include <numeric>

#include "rfsum/error.hpp"
#include "rfsum/ramanujan.hpp"

namespace rfsum {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InvalidArgument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

void MeanValueReport::set_predicted(double value) {
  predicted = value;
  abs_gap = std::fabs(empirical - value);
  if (value != 0.0) {
    rel_gap = *abs_gap / std::fabs(value);
  } else {
    rel_gap.reset();
  }
}

std::string to_string(Weight w) { return w == Weight::lambda ? "lambda" : "lambda1"; }

namespace detail {

std::vector<std::uint64_t> trace_checkpoints(std::uint64_t N) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t i = 1; i <= 10; ++i) {
    // i*N/10 without overflowing for N near 2^64
    const std::uint64_t cp = (N / 10) * i + (N % 10) * i / 10;
    if (cp == 0 || (!cps.empty() && cps.back() == cp)) continue;
    cps.push_back(cp);
  }
  return cps;
}

}  // namespace detail

namespace {

std::span<const double> weights(const SieveTables& t, Weight w) {
  return w == Weight::lambda ? t.lambda_table() : t.lambda1_table();
}

void require_bound(const SieveTables& t, std::uint64_t needed, const char* what) {
  if (needed > t.bound()) {
    throw InvalidArgument(std::string(what) + " needs sieve bound >= " + std::to_string(needed) +
                          ", have " + std::to_string(t.bound()));
  }
}

void require_modulus(const SieveTables& t, std::int64_t q, const char* what) {
  if (q < 1) throw InvalidArgument(std::string(what) + ": modulus must be >= 1");
  require_bound(t, static_cast<std::uint64_t>(q), what);
}

void require_n(std::uint64_t N) {
  if (N == 0) throw InvalidArgument("sample bound N must be >= 1");
}

}  // namespace

MeanValueReport cq_mean(const SieveTables& tables, std::int64_t q, std::uint64_t N,
                        const ReduceOptions& options) {
  require_modulus(tables, q, "cq_mean");
  require_n(N);
  const CqEvaluator c(tables);
  auto report = empirical_mean(
      N, [&](std::uint64_t n) { return static_cast<double>(c(q, static_cast<std::int64_t>(n))); },
      options);
  std::int64_t period_sum = 0;
  for (std::int64_t n = 1; n <= q; ++n) period_sum += c(q, n);
  report.label = "cq_mean:q=" + std::to_string(q);
  report.exact_period_mean = Rational(period_sum, q);
  report.remainder_bound =
      static_cast<double>(tables.phi(static_cast<std::uint64_t>(q))) * static_cast<double>(q) /
      static_cast<double>(N);
  report.set_predicted(q == 1 ? 1.0 : 0.0);
  return report;
}

MeanValueReport cq_orthogonality(const SieveTables& tables, std::int64_t r, std::int64_t s,
                                 std::int64_t m, std::uint64_t N, const ReduceOptions& options) {
  require_modulus(tables, r, "cq_orthogonality");
  require_modulus(tables, s, "cq_orthogonality");
  require_n(N);
  const CqEvaluator c(tables);
  auto report = empirical_mean(
      N,
      [&](std::uint64_t n) {
        const auto k = static_cast<std::int64_t>(n);
        return static_cast<double>(c(r, k) * c(s, k + m));
      },
      options);
  const std::int64_t period = std::lcm(r, s);
  std::int64_t period_sum = 0;
  for (std::int64_t n = 1; n <= period; ++n) period_sum += c(r, n) * c(s, n + m);
  report.label = "orth:r=" + std::to_string(r) + ",s=" + std::to_string(s) +
                 ",m=" + std::to_string(m);
  report.exact_period_mean = Rational(period_sum, period);
  report.remainder_bound = static_cast<double>(tables.phi(r)) *
                           static_cast<double>(tables.phi(s)) * static_cast<double>(period) /
                           static_cast<double>(N);
  report.set_predicted(r == s ? static_cast<double>(c(r, m)) : 0.0);
  return report;
}

namespace {

MeanValueReport shifted_mean(const SieveTables& tables, std::uint64_t h, std::uint64_t N,
                             Weight weight, const ReduceOptions& options) {
  require_n(N);
  require_bound(tables, N + h, "gap autocorrelation");
  const auto w = weights(tables, weight);
  auto report =
      empirical_mean(N, [&](std::uint64_t n) { return w[n] * w[n + h]; }, options);
  report.label = "autocorr:h=" + std::to_string(h) + ":" + to_string(weight);
  return report;
}

}  // namespace

MeanValueReport pair_autocorrelation(const SieveTables& tables, std::uint64_t h, std::uint64_t N,
                                     Weight weight, const ReduceOptions& options) {
  if (h == 0) throw InvalidArgument("gap h must be >= 1");
  if (h % 2 == 1) return odd_gap_mean(tables, h, N, weight, options);
  auto report = shifted_mean(tables, h, N, weight, options);
  report.set_predicted(pair_constant(h).value);
  return report;
}

MeanValueReport odd_gap_mean(const SieveTables& tables, std::uint64_t h, std::uint64_t N,
                             Weight weight, const ReduceOptions& options) {
  if (h % 2 == 0) throw InvalidArgument("odd_gap_mean: gap h=" + std::to_string(h) + " is even");
  auto report = shifted_mean(tables, h, N, weight, options);
  report.set_predicted(0.0);
  return report;
}

MeanValueReport conjecture_d_mean(const SieveTables& tables, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t l, std::uint64_t N, Weight weight,
                                  const ReduceOptions& options) {
  validate_conjecture_d(a, b, l);
  require_n(N);
  require_bound(tables, std::max(N, (b * N + l) / a), "conjecture D mean");
  const auto w = weights(tables, weight);
  auto report = empirical_mean(
      N,
      [&](std::uint64_t n) {
        const std::uint64_t t = b * n + l;
        return t % a == 0 ? w[n] * w[t / a] : 0.0;
      },
      options);
  report.label = "conjd:a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                 ",l=" + std::to_string(l) + ":" + to_string(weight);
  report.set_predicted(conjecture_d_constant(a, b, l).value);
  return report;
}

TupleMeanResult tuple_mean(const SieveTables& tables, const TupleSpec& spec, std::uint64_t N,
                           const ReduceOptions& options, std::uint64_t prime_bound) {
  TupleMeanResult result;
  result.constant = tuple_constant(spec, prime_bound);  // rejects inadmissible specs
  require_n(N);
  require_bound(tables, N + spec.offsets.back(), "tuple mean");
  auto run = [&](Weight weight) {
    const auto w = weights(tables, weight);
    auto report = empirical_mean(
        N,
        [&](std::uint64_t n) {
          double prod = 1.0;
          for (const auto o : spec.offsets) {
            prod *= w[n + o];
            if (prod == 0.0) break;
          }
          return prod;
        },
        options);
    report.label = "tuple:" + result.constant.parameters + ":" + to_string(weight);
    report.set_predicted(result.constant.value);
    return report;
  };
  result.lambda = run(Weight::lambda);
  result.lambda1 = run(Weight::lambda1);
  return result;
}

MeanValueReport pnt_mean(const SieveTables& tables, std::uint64_t N, Weight weight,
                         const ReduceOptions& options) {
  require_n(N);
  require_bound(tables, N, "pnt mean");
  const auto w = weights(tables, weight);
  auto report = empirical_mean(N, [&](std::uint64_t n) { return w[n]; }, options);
  report.label = "pnt:" + to_string(weight);
  report.set_predicted(1.0);
  return report;
}

MeanValueReport pnt_mean_streamed(std::uint64_t N, std::uint64_t segment_size) {
  require_n(N);
  SegmentedLambdaStream stream(N, segment_size);
  const auto checkpoints = detail::trace_checkpoints(N);
  MeanValueReport report;
  report.N = N;
  report.label = "pnt:lambda1:streamed";
  CompensatedSum sum;
  std::size_t next = 0;
  while (auto seg = stream.next()) {
    for (std::size_t i = 0; i < seg->values.size(); ++i) {
      sum.add(seg->values[i]);
      const std::uint64_t n = seg->first + i;
      if (n == checkpoints[next]) {
        report.trace.emplace_back(n, sum.value() / static_cast<double>(n));
        ++next;
      }
    }
  }
  report.empirical = report.trace.back().second;
  report.set_predicted(1.0);
  return report;
}

std::int64_t poly_mod(std::span<const std::int64_t> poly, std::int64_t n, std::int64_t q) {
  if (q < 1) throw InvalidArgument("poly_mod: modulus must be >= 1");
  const auto uq = static_cast<std::uint64_t>(q);
  auto reduce = [q](std::int64_t v) { return static_cast<std::uint64_t>(((v % q) + q) % q); };
  const std::uint64_t x = reduce(n);
  std::uint64_t acc = 0;
  for (const auto coeff : poly) acc = (acc * x % uq + reduce(coeff)) % uq;
  return static_cast<std::int64_t>(acc);
}

MeanValueReport polynomial_cq_mean(const SieveTables& tables, std::int64_t q,
                                   std::span<const std::int64_t> poly, std::uint64_t N,
                                   const ReduceOptions& options) {
  require_modulus(tables, q, "polynomial_cq_mean");
  require_n(N);
  if (poly.empty()) throw InvalidArgument("polynomial_cq_mean: empty coefficient list");
  const CqEvaluator c(tables);
  auto report = empirical_mean(
      N,
      [&](std::uint64_t n) {
        return static_cast<double>(c(q, poly_mod(poly, static_cast<std::int64_t>(n), q)));
      },
      options);
  std::int64_t period_sum = 0;
  for (std::int64_t r = 0; r < q; ++r) period_sum += c(q, poly_mod(poly, r, q));
  std::string poly_str;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) poly_str += ",";
    poly_str += std::to_string(poly[i]);
  }
  report.label = "polymean:q=" + std::to_string(q) + ",poly=" + poly_str;
  report.exact_period_mean = Rational(period_sum, q);
  report.remainder_bound = static_cast<double>(tables.phi(static_cast<std::uint64_t>(q))) *
                           static_cast<double>(q) / static_cast<double>(N);
  report.set_predicted(report.exact_period_mean->to_double());
  return report;
}

std::int64_t goldbach_correlation(const SieveTables& tables, std::uint64_t N, std::int64_t q1,
                                  std::int64_t q2) {
  require_n(N);
  require_modulus(tables, q1, "goldbach_correlation");
  require_modulus(tables, q2, "goldbach_correlation");
  const CqEvaluator c(tables);
  const auto two_n = static_cast<std::int64_t>(2 * N);
  std::int64_t sum = 0;
  for (std::int64_t n = 1; n <= two_n; ++n) sum += c(q1, n) * c(q2, two_n - n);
  return sum;
}

}  // namespace rfsum
