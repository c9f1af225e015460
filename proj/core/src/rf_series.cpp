#include "rfsum/rf_series.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rfsum/compensated.hpp"
#include "rfsum/error.hpp"
#include "rfsum/ramanujan.hpp"

namespace rfsum {
namespace {

void check_z(double z) {
  if (!(z > 0.0 && z < 1.0)) {
    throw InvalidArgument("z must lie in the open interval (0, 1), got " + std::to_string(z));
  }
}

void check_params(const SieveTables& tables, const SeriesParams& p) {
  check_z(p.z);
  if (p.Q < 1) throw InvalidArgument("Q must be >= 1");
  if (p.Q > tables.bound()) {
    throw InvalidArgument("Q=" + std::to_string(p.Q) + " exceeds sieve bound " +
                          std::to_string(tables.bound()));
  }
}

// Ascending-q compensated sum of mu(q)/phi(q) c_q z^q.
template <typename Cq>
double series_sum(const SieveTables& tables, const SeriesParams& p, Cq&& cq, bool absolute) {
  CompensatedSum sum;
  double zq = 1.0;
  for (std::uint64_t q = 1; q <= p.Q; ++q) {
    zq *= p.z;
    const int mu = tables.mu(q);
    if (mu == 0) continue;
    const double term = mu / static_cast<double>(tables.phi(q)) * cq(q) * zq;
    sum.add(absolute ? std::fabs(term) : term);
  }
  return sum.value();
}

bool is_decade(std::uint64_t q) {
  while (q >= 10 && q % 10 == 0) q /= 10;
  return q == 1;
}

}  // namespace

double tail_bound(double z, std::uint64_t Q) {
  check_z(z);
  return std::pow(z, static_cast<double>(Q)) * (z / (1.0 - z));
}

std::uint64_t required_Q(double z, double epsilon) {
  check_z(z);
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  constexpr double kMaxQ = 9007199254740992.0;  // 2^53
  const double ratio = z / (1.0 - z);
  if (ratio < epsilon) return 1;  // z^1 * ratio < ratio < epsilon
  // z^Q < epsilon / ratio  <=>  Q > log(epsilon / ratio) / log z
  const double estimate = std::log(epsilon / ratio) / std::log(z);
  if (!std::isfinite(estimate) || estimate > kMaxQ) {
    throw ResourceLimit("required_Q: z=" + std::to_string(z) + ", epsilon=" +
                        std::to_string(epsilon) + " needs more than 2^53 terms");
  }
  auto Q = static_cast<std::uint64_t>(std::max(1.0, std::floor(estimate)));
  while (Q > 1 && tail_bound(z, Q - 1) < epsilon) --Q;
  while (!(tail_bound(z, Q) < epsilon)) ++Q;
  return Q;
}

double lambda1_series(const SieveTables& tables, const SeriesParams& params, double x) {
  check_params(tables, params);
  return series_sum(tables, params, [x](std::uint64_t q) { return cq_real(q, x); }, false);
}

double lambda1_series(const SieveTables& tables, const SeriesParams& params, std::int64_t n) {
  check_params(tables, params);
  const CqEvaluator c(tables);
  return series_sum(
      tables, params,
      [&](std::uint64_t q) { return static_cast<double>(c(static_cast<std::int64_t>(q), n)); },
      false);
}

double lambda1_series_abs(const SieveTables& tables, const SeriesParams& params, double x) {
  check_params(tables, params);
  return series_sum(tables, params, [x](std::uint64_t q) { return cq_real(q, x); }, true);
}

namespace {

template <typename Eval>
AbelTrace run_ladder(double x, std::span<const double> z_list, double epsilon, Eval&& eval) {
  if (z_list.empty()) throw InvalidArgument("abel ladder needs at least one z");
  AbelTrace trace;
  trace.x = x;
  trace.epsilon = epsilon;
  double prev = 0.0;
  for (const double z : z_list) {
    check_z(z);
    if (!trace.ladder.empty() && !(z > prev)) {
      throw InvalidArgument("abel ladder z values must be strictly increasing");
    }
    prev = z;
    const SeriesParams p{z, required_Q(z, epsilon), epsilon};
    trace.ladder.push_back(AbelStep{z, p.Q, eval(p), tail_bound(z, p.Q)});
  }
  return trace;
}

}  // namespace

AbelTrace abel_ladder(const SieveTables& tables, std::int64_t n, std::span<const double> z_list,
                      double epsilon) {
  if (n < 1) throw InvalidArgument("abel_ladder: n must be a positive integer");
  auto trace = run_ladder(static_cast<double>(n), z_list, epsilon,
                          [&](const SeriesParams& p) { return lambda1_series(tables, p, n); });
  trace.target = lambda1_at(tables, static_cast<std::uint64_t>(n));
  return trace;
}

AbelTrace abel_ladder_real(const SieveTables& tables, double x, std::span<const double> z_list,
                           double epsilon) {
  if (!std::isfinite(x)) throw InvalidArgument("abel_ladder_real: x must be finite");
  return run_ladder(x, z_list, epsilon,
                    [&](const SeriesParams& p) { return lambda1_series(tables, p, x); });
}

namespace {

void check_q(const SieveTables& tables, std::uint64_t needed, std::uint64_t Q) {
  if (Q < 1) throw InvalidArgument("Q must be >= 1");
  if (needed > tables.bound()) {
    throw InvalidArgument("expansion to Q=" + std::to_string(Q) + " needs sieve bound " +
                          std::to_string(needed));
  }
}

template <typename Term>
void accumulate(RfExpansion& e, double scale, Term&& term) {
  CompensatedSum sum;
  for (std::uint64_t q = 1; q <= e.Q; ++q) {
    sum.add(term(q));
    if (is_decade(q) || q == e.Q) e.trace.emplace_back(q, scale * sum.value());
  }
  e.value = scale * sum.value();
}

}  // namespace

RfExpansion sigma_rf(const SieveTables& tables, std::int64_t n, std::uint64_t Q) {
  if (n < 1) throw InvalidArgument("sigma_rf: n must be >= 1");
  check_q(tables, std::max<std::uint64_t>(Q, static_cast<std::uint64_t>(n)), Q);
  const CqEvaluator c(tables);
  RfExpansion e;
  e.function = "sigma";
  e.argument = n;
  e.Q = Q;
  e.target = static_cast<double>(sigma_at(tables, static_cast<std::uint64_t>(n)));
  const double scale = std::numbers::pi * std::numbers::pi * static_cast<double>(n) / 6.0;
  accumulate(e, scale, [&](std::uint64_t q) {
    const double qd = static_cast<double>(q);
    return static_cast<double>(c(static_cast<std::int64_t>(q), n)) / (qd * qd);
  });
  e.tail_bound = scale * e.target / static_cast<double>(Q);
  return e;
}

RfExpansion divisor_rf(const SieveTables& tables, std::int64_t n, std::uint64_t Q) {
  if (n < 1) throw InvalidArgument("divisor_rf: n must be >= 1");
  check_q(tables, std::max<std::uint64_t>(Q, static_cast<std::uint64_t>(n)), Q);
  const CqEvaluator c(tables);
  RfExpansion e;
  e.function = "divisor";
  e.argument = n;
  e.Q = Q;
  e.target = static_cast<double>(divisor_count_at(tables, static_cast<std::uint64_t>(n)));
  accumulate(e, -1.0, [&](std::uint64_t q) {
    const double qd = static_cast<double>(q);
    return std::log(qd) / qd * static_cast<double>(c(static_cast<std::int64_t>(q), n));
  });
  return e;
}

RfExpansion circle_lattice_rf(const SieveTables& tables, std::int64_t a, std::uint64_t Q) {
  if (a < 0) throw InvalidArgument("circle_lattice_rf: a must be >= 0");
  check_q(tables, 2 * Q - 1, Q);
  const CqEvaluator c(tables);
  RfExpansion e;
  e.function = "circle";
  e.argument = a;
  e.Q = Q;
  e.target = static_cast<double>(lattice_points_in_disc(a));
  e.secondary_target = static_cast<double>(sum_of_two_squares_count(a));
  accumulate(e, std::numbers::pi, [&](std::uint64_t q) {
    const auto odd = static_cast<std::int64_t>(2 * q - 1);
    const double sign = (q % 2 == 1) ? 1.0 : -1.0;
    return sign / static_cast<double>(odd) * static_cast<double>(c(odd, a));
  });
  return e;
}

std::uint64_t lattice_points_in_disc(std::int64_t a) {
  if (a < 0) return 0;
  std::uint64_t count = 0;
  for (std::int64_t u = 0; u * u <= a; ++u) {
    std::int64_t v = static_cast<std::int64_t>(std::sqrt(static_cast<double>(a - u * u)));
    while (v * v > a - u * u) --v;
    while ((v + 1) * (v + 1) <= a - u * u) ++v;
    // 2v+1 values of v for this u, doubled for -u when u > 0
    count += static_cast<std::uint64_t>(2 * v + 1) * (u == 0 ? 1 : 2);
  }
  return count;
}

std::uint64_t sum_of_two_squares_count(std::int64_t a) {
  if (a < 0) return 0;
  std::uint64_t count = 0;
  for (std::int64_t u = -a; u <= a; ++u) {
    if (u * u > a) continue;
    const std::int64_t rest = a - u * u;
    const auto v = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (v * v == rest) count += v == 0 ? 1 : 2;
  }
  return count;
}

}  // namespace rfsum
