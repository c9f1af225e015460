#pragma once

// Abel-regularised Ramanujan expansions.
//
// The power series Lambda_1(z, x) = sum_q mu(q)/phi(q) c_q(x) z^q converges
// absolutely for 0 < z < 1, and its Q-term partial sum is within
//   tail_bound(z, Q) = z^Q * z / (1 - z)
// of the full series, uniformly in x. Letting z -> 1- recovers Lambda_1(n)
// at positive integers; abel_ladder reports that trend without asserting it.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfsum/arith_sieve.hpp"

namespace rfsum {

struct SeriesParams {
  double z = 0.9;          // in (0, 1)
  std::uint64_t Q = 1;     // number of terms
  double epsilon = 1e-8;   // target tail, used by required_Q
};

double tail_bound(double z, std::uint64_t Q);

// Smallest Q >= 1 with tail_bound(z, Q) < epsilon. Depends only on (z, epsilon).
// ResourceLimit when Q would leave the exactly-representable integer range.
std::uint64_t required_Q(double z, double epsilon);

// Lambda_1(Q, z, x) with the cosine form of c_q(x). Needs tables.bound() >= Q.
double lambda1_series(const SieveTables& tables, const SeriesParams& params, double x);
// Same partial sum at an integer argument through the integer c_q(n).
double lambda1_series(const SieveTables& tables, const SeriesParams& params, std::int64_t n);

// Sum of the absolute values of the first Q terms (bounded by z/(1-z)).
double lambda1_series_abs(const SieveTables& tables, const SeriesParams& params, double x);

struct AbelStep {
  double z = 0.0;
  std::uint64_t Q = 0;
  double value = 0.0;
  double tail = 0.0;  // tail_bound(z, Q)
};

struct AbelTrace {
  double x = 0.0;
  double epsilon = 0.0;
  std::vector<AbelStep> ladder;
  std::optional<double> target;  // Lambda_1(x) when x is a positive integer
};

inline constexpr double kDefaultAbelLadder[] = {0.9, 0.99, 0.999};
inline constexpr double kDefaultAbelEpsilon = 1e-8;

// Evaluates Lambda_1(required_Q(z, eps), z, n) for each z in a strictly
// increasing ladder. Needs tables.bound() >= max(n, largest Q).
AbelTrace abel_ladder(const SieveTables& tables, std::int64_t n, std::span<const double> z_list,
                      double epsilon);
// Real-argument variant; no target is attached.
AbelTrace abel_ladder_real(const SieveTables& tables, double x, std::span<const double> z_list,
                           double epsilon);

// Truncated classical expansion with its partial-sum trace at Q = 1, 10,
// 100, ..., Q.
struct RfExpansion {
  std::string function;        // "sigma", "divisor", "circle"
  std::int64_t argument = 0;
  std::uint64_t Q = 0;
  double value = 0.0;
  double target = 0.0;         // value the expansion is compared with
  std::optional<double> secondary_target;
  std::optional<double> tail_bound;  // only where a rigorous bound exists
  std::vector<std::pair<std::uint64_t, double>> trace;
};

// sigma(n) = (pi^2 n / 6) sum_q c_q(n) / q^2; tail <= (pi^2 n/6) sigma(n)/Q.
RfExpansion sigma_rf(const SieveTables& tables, std::int64_t n, std::uint64_t Q);
// d(n) = -sum_q (log q / q) c_q(n). Diagnostic only (conditional convergence).
RfExpansion divisor_rf(const SieveTables& tables, std::int64_t n, std::uint64_t Q);
// pi sum_q (-1)^(q-1)/(2q-1) c_{2q-1}(a), traced against the lattice count
// #{(u,v): u^2+v^2 <= a}; secondary target r_2(a) = #{(u,v): u^2+v^2 = a}.
// Needs tables.bound() >= 2Q-1.
RfExpansion circle_lattice_rf(const SieveTables& tables, std::int64_t a, std::uint64_t Q);

std::uint64_t lattice_points_in_disc(std::int64_t a);
std::uint64_t sum_of_two_squares_count(std::int64_t a);

}  // namespace rfsum
