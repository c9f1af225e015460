#pragma once

// Hardy-Littlewood constants as truncated Euler products over p <= P,
// evaluated in log space with compensated accumulation.
//
// tail_estimate bounds |log(full product) - log(truncated product)|; it is
// +infinity where no bound applies (divergent products, or P below the
// primes that the bound assumes are already included).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfsum/arith_sieve.hpp"

namespace rfsum {

enum class ConstantForm { twin, pair, conjecture_d, tuple, series, series_wk };

std::string to_string(ConstantForm form);

struct SingularConstant {
  double value = 0.0;
  std::uint64_t truncation_prime = 0;  // largest prime used
  double tail_estimate = 0.0;
  ConstantForm form = ConstantForm::twin;
  std::string parameters;              // e.g. "h=6", "a=3,b=2,l=1", "0,2,6"
};

inline constexpr std::uint64_t kDefaultPrimeBound = 1'000'000;

// C_2 = prod_{p>2} (1 - 1/(p-1)^2) over 3 <= p <= P; tail 1/(P-1).
SingularConstant twin_constant(std::uint64_t P = kDefaultPrimeBound);

// 2 C_2 prod_{p | h2, p > 2} (p-1)/(p-2). InvalidArgument for odd or zero h2.
SingularConstant pair_constant(std::uint64_t h2, std::uint64_t P = kDefaultPrimeBound);

// Throws InvalidArgument naming the clause when (a, b, l) are not positive,
// pairwise coprime, with exactly one of them even.
void validate_conjecture_d(std::uint64_t a, std::uint64_t b, std::uint64_t l);

// (2 C_2 / a) prod (p-1)/(p-2) over odd primes p dividing a, b or l.
SingularConstant conjecture_d_constant(std::uint64_t a, std::uint64_t b, std::uint64_t l,
                                       std::uint64_t P = kDefaultPrimeBound);

// Offsets 0 = o_0 < o_1 < ... < o_m of the linear forms n + o_i.
struct TupleSpec {
  std::vector<std::uint64_t> offsets;
  bool admissible = false;
  std::uint64_t obstructing_prime = 0;  // p with nu(p) = p, when inadmissible

  std::size_t m() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
};

// Validates the offsets (strictly increasing, starting at 0) and runs the
// fixed-prime-divisor check over all p <= max(offsets) + 1.
TupleSpec make_tuple_spec(std::vector<std::uint64_t> offsets);

// Number of distinct residues of the offsets modulo p.
std::uint64_t residue_count(std::span<const std::uint64_t> offsets, std::uint64_t p);

// prod_p (p/(p-1))^m (p - nu(p)) / (p - 1). InvalidArgument if inadmissible.
SingularConstant tuple_constant(const TupleSpec& spec, std::uint64_t P = kDefaultPrimeBound);

// Euler-product rearrangement of sum_q mu(q)/phi(q) c_q(h):
//   prod_{p<=P} (1 + mu(p) c_p(h) / phi(p)).
// The product has a zero factor at every p | h and otherwise diverges, so
// tail_estimate is +infinity.
SingularConstant series_constant(std::uint64_t h, std::uint64_t P = kDefaultPrimeBound);

// Rearrangement of sum_q (mu(q)/phi(q))^2 c_q(h):
//   prod_{p<=P} (1 + c_p(h) / (p-1)^2),
// zero for odd h through the p = 2 factor.
SingularConstant series_wk(std::uint64_t h, std::uint64_t P = kDefaultPrimeBound);

// Raw q-ordered partial sums of sum_q a_q c_q(h) with a_q = mu(q)/phi(q)
// (squared = false) or (mu(q)/phi(q))^2 (squared = true), at Q = 1, 10,
// 100, ..., Q0. Needs tables.bound() >= Q0. Diagnostic only.
std::vector<std::pair<std::uint64_t, double>> raw_series_trace(const SieveTables& tables,
                                                               std::uint64_t h,
                                                               std::uint64_t Q0, bool squared);

}  // namespace rfsum
