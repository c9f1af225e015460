#pragma once

// Ramanujan sums c_q(n) = sum_{1<=k<=q, (k,q)=1} exp(2 pi i k n / q).
//
// Integer arguments go through Hoelder's closed form
//   c_q(n) = mu(q/g) phi(q) / phi(q/g),  g = gcd(q, n),
// which is O(1) given the sieve. The exponential-sum definition is kept as
// an independent oracle, and the real-argument cosine form c_q(x) covers
// non-integer x.

#include <cstdint>
#include <string>
#include <vector>

#include "rfsum/arith_sieve.hpp"

namespace rfsum {

class CqEvaluator {
 public:
  explicit CqEvaluator(const SieveTables& tables, std::int64_t direct_threshold = 1000);

  const SieveTables& tables() const noexcept { return *tables_; }
  std::int64_t direct_threshold() const noexcept { return direct_threshold_; }

  // Hoelder path. q == 0 follows the real-valued convention c_0 = 1;
  // InvalidArgument for q < 0 or q > tables().bound().
  std::int64_t cq(std::int64_t q, std::int64_t n) const;
  std::int64_t operator()(std::int64_t q, std::int64_t n) const { return cq(q, n); }

  // Exponential-sum oracle, restricted to 1 <= |q| <= direct_threshold.
  std::int64_t direct(std::int64_t q, std::int64_t n) const;

 private:
  const SieveTables* tables_;
  std::int64_t direct_threshold_;
};

// Convenience wrapper around CqEvaluator::cq.
std::int64_t cq_int(const SieveTables& tables, std::int64_t q, std::int64_t n);

// Real-valued Ramanujan sum:
//   q = 0: 1;  q = 1: cos(2 pi x);  q = 2: cos(pi x);
//   q >= 3: 2 sum_{k <= q/2, (k,q)=1} cos(2 pi k x / q).
double cq_real(std::uint64_t q, double x);

// Exponential sum evaluated directly in complex arithmetic and rounded.
// Negative q is accepted (the sum then runs over k = 1..|q| with e^{2 pi i k n / q}).
// Throws ConsistencyError if the imaginary part or the distance to the
// nearest integer exceeds 1e-6.
std::int64_t direct_ramanujan_sum(std::int64_t q, std::int64_t n);

struct PropertyCheck {
  std::string id;         // "int.a", "real.f", ...
  std::string statement;
  std::string domain;     // the grid actually checked, including restrictions
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string witness;    // first failing case, empty when passed
  bool passed() const noexcept { return failures == 0; }
};

struct PropertyReport {
  std::int64_t q_max = 0;
  std::int64_t n_max = 0;
  std::vector<PropertyCheck> checks;
  // Observations that are deliberately not pass/fail checks.
  std::vector<std::string> notes;

  bool all_passed() const noexcept;
  std::uint64_t failure_count() const noexcept;
};

// Runs the integer-argument property list (c_1 = 1, c_q(0) = phi(q),
// c_q(1) = mu(q), the prime-q case split, multiplicativity in q, the phi and
// sigma bounds, evenness in n and in q) and the real-argument list at the
// points where it is defined, over 1 <= q <= q_max and |n| <= n_max.
// Requires tables.bound() >= max(q_max * q_max, n_max) for the product and
// sigma checks.
PropertyReport check_property_catalog(const SieveTables& tables, std::int64_t q_max,
                                      std::int64_t n_max);

}  // namespace rfsum
