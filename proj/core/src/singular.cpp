#include "rfsum/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rfsum/compensated.hpp"
#include "rfsum/error.hpp"
#include "rfsum/ramanujan.hpp"

namespace rfsum {

std::string to_string(ConstantForm form) {
  switch (form) {
    case ConstantForm::twin: return "C2";
    case ConstantForm::pair: return "pair";
    case ConstantForm::conjecture_d: return "conjd";
    case ConstantForm::tuple: return "tuple";
    case ConstantForm::series: return "series";
    case ConstantForm::series_wk: return "series_wk";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// prod over primes p <= P of exp(log_factor(p)) as a compensated sum of logs.
// A factor of exactly zero (log_factor = -inf) makes the product zero.
template <typename LogFactor>
SingularConstant euler_product(std::uint64_t P, std::uint64_t first_prime, LogFactor&& log_factor) {
  SingularConstant c;
  CompensatedSum log_sum;
  bool zero = false;
  for (const std::uint32_t p : primes_up_to(P)) {
    if (p < first_prime) continue;
    c.truncation_prime = p;
    const double lf = log_factor(static_cast<std::uint64_t>(p));
    if (lf == -kInf) {
      zero = true;
      continue;
    }
    log_sum.add(lf);
  }
  c.value = zero ? 0.0 : std::exp(log_sum.value());
  return c;
}

// Odd prime divisors of n, ascending.
std::vector<std::uint64_t> odd_prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  while (n % 2 == 0 && n > 0) n /= 2;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  std::uint64_t largest = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      largest = p;
      n /= p;
    }
  }
  return n > 1 ? n : largest;
}

double c2_tail(std::uint64_t P) { return 1.0 / static_cast<double>(P - 1); }

}  // namespace

SingularConstant twin_constant(std::uint64_t P) {
  if (P < 3) throw InvalidArgument("twin_constant: P must be >= 3");
  auto c = euler_product(P, 3, [](std::uint64_t p) {
    const double pm1 = static_cast<double>(p - 1);
    return std::log1p(-1.0 / (pm1 * pm1));
  });
  c.form = ConstantForm::twin;
  c.tail_estimate = c2_tail(P);
  return c;
}

SingularConstant pair_constant(std::uint64_t h2, std::uint64_t P) {
  if (h2 == 0 || h2 % 2 != 0) {
    throw InvalidArgument("pair_constant: gap h=" + std::to_string(h2) + " must be positive and even");
  }
  auto c = twin_constant(P);
  double factor = 2.0;
  for (const auto p : odd_prime_divisors(h2)) {
    factor *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  }
  c.value *= factor;
  c.form = ConstantForm::pair;
  c.parameters = "h=" + std::to_string(h2);
  return c;
}

void validate_conjecture_d(std::uint64_t a, std::uint64_t b, std::uint64_t l) {
  if (a == 0 || b == 0 || l == 0) throw InvalidArgument("conjecture D: a, b, l must be positive");
  if (std::gcd(a, b) != 1) throw InvalidArgument("conjecture D: gcd(a, b) must be 1");
  if (std::gcd(a, l) != 1) throw InvalidArgument("conjecture D: gcd(a, l) must be 1");
  if (std::gcd(b, l) != 1) throw InvalidArgument("conjecture D: gcd(b, l) must be 1");
  const int evens = (a % 2 == 0) + (b % 2 == 0) + (l % 2 == 0);
  if (evens != 1) throw InvalidArgument("conjecture D: exactly one of a, b, l must be even");
}

SingularConstant conjecture_d_constant(std::uint64_t a, std::uint64_t b, std::uint64_t l,
                                       std::uint64_t P) {
  validate_conjecture_d(a, b, l);
  auto c = twin_constant(P);
  std::vector<std::uint64_t> primes;
  for (const auto x : {a, b, l}) {
    const auto ps = odd_prime_divisors(x);
    primes.insert(primes.end(), ps.begin(), ps.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  double factor = 2.0 / static_cast<double>(a);
  for (const auto p : primes) factor *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  c.value *= factor;
  c.form = ConstantForm::conjecture_d;
  c.parameters = "a=" + std::to_string(a) + ",b=" + std::to_string(b) + ",l=" + std::to_string(l);
  return c;
}

std::uint64_t residue_count(std::span<const std::uint64_t> offsets, std::uint64_t p) {
  std::vector<std::uint64_t> residues;
  residues.reserve(offsets.size());
  for (const auto o : offsets) residues.push_back(o % p);
  std::sort(residues.begin(), residues.end());
  return static_cast<std::uint64_t>(std::unique(residues.begin(), residues.end()) - residues.begin());
}

TupleSpec make_tuple_spec(std::vector<std::uint64_t> offsets) {
  if (offsets.empty() || offsets.front() != 0) {
    throw InvalidArgument("tuple offsets must start with 0");
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] <= offsets[i - 1]) {
      throw InvalidArgument("tuple offsets must be strictly increasing");
    }
  }
  TupleSpec spec;
  spec.offsets = std::move(offsets);
  spec.admissible = true;
  for (const auto p : primes_up_to(spec.offsets.back() + 1)) {
    if (residue_count(spec.offsets, p) == p) {
      spec.admissible = false;
      spec.obstructing_prime = p;
      break;
    }
  }
  return spec;
}

SingularConstant tuple_constant(const TupleSpec& spec, std::uint64_t P) {
  if (!spec.admissible) {
    throw InvalidArgument("tuple is inadmissible: every n has a member divisible by p=" +
                          std::to_string(spec.obstructing_prime));
  }
  if (P < 2) throw InvalidArgument("tuple_constant: P must be >= 2");
  const auto m = static_cast<double>(spec.m());
  const std::uint64_t max_offset = spec.offsets.back();
  const std::uint64_t full = spec.offsets.size();
  auto c = euler_product(P, 2, [&](std::uint64_t p) {
    const std::uint64_t nu = p <= max_offset ? residue_count(spec.offsets, p) : full;
    const double pd = static_cast<double>(p);
    // (p/(p-1))^m (p-nu)/(p-1) = (1 - 1/p)^{-m} (1 + (1-nu)/(p-1))
    return -m * std::log1p(-1.0 / pd) +
           std::log1p((1.0 - static_cast<double>(nu)) / (pd - 1.0));
  });
  c.form = ConstantForm::tuple;
  for (std::size_t i = 0; i < spec.offsets.size(); ++i) {
    if (i) c.parameters += ",";
    c.parameters += std::to_string(spec.offsets[i]);
  }
  if (spec.m() == 0) {
    c.tail_estimate = 0.0;
  } else if (P >= max_offset && P >= 2 * spec.m() + 1) {
    c.tail_estimate = (m * m + m / 2.0) / static_cast<double>(P - 1);
  } else {
    c.tail_estimate = kInf;
  }
  return c;
}

SingularConstant series_constant(std::uint64_t h, std::uint64_t P) {
  if (h == 0) throw InvalidArgument("series_constant: h must be >= 1");
  if (P < 2) throw InvalidArgument("series_constant: P must be >= 2");
  // mu(p) c_p(h) / phi(p) = -c_p(h)/(p-1): -1 when p | h, else 1/(p-1)
  auto c = euler_product(P, 2, [h](std::uint64_t p) {
    return h % p == 0 ? -kInf : std::log1p(1.0 / static_cast<double>(p - 1));
  });
  c.form = ConstantForm::series;
  c.parameters = "h=" + std::to_string(h);
  c.tail_estimate = kInf;
  return c;
}

SingularConstant series_wk(std::uint64_t h, std::uint64_t P) {
  if (h == 0) throw InvalidArgument("series_wk: h must be >= 1");
  if (P < 2) throw InvalidArgument("series_wk: P must be >= 2");
  // c_p(h) / (p-1)^2: 1/(p-1) when p | h, else -1/(p-1)^2
  auto c = euler_product(P, 2, [h](std::uint64_t p) {
    const double pm1 = static_cast<double>(p - 1);
    return std::log1p(h % p == 0 ? 1.0 / pm1 : -1.0 / (pm1 * pm1));
  });
  c.form = ConstantForm::series_wk;
  c.parameters = "h=" + std::to_string(h);
  c.tail_estimate = largest_prime_factor(h) <= P ? c2_tail(P) : kInf;
  return c;
}

std::vector<std::pair<std::uint64_t, double>> raw_series_trace(const SieveTables& tables,
                                                               std::uint64_t h,
                                                               std::uint64_t Q0, bool squared) {
  if (Q0 < 1 || Q0 > tables.bound()) {
    throw InvalidArgument("raw_series_trace: Q0 must lie in [1, sieve bound]");
  }
  const CqEvaluator c(tables);
  std::vector<std::pair<std::uint64_t, double>> trace;
  CompensatedSum sum;
  std::uint64_t next_mark = 1;
  for (std::uint64_t q = 1; q <= Q0; ++q) {
    const int mu = tables.mu(q);
    if (mu != 0) {
      const double a = mu / static_cast<double>(tables.phi(q));
      const double coeff = squared ? a * a : a;
      sum.add(coeff * static_cast<double>(c(static_cast<std::int64_t>(q),
                                            static_cast<std::int64_t>(h))));
    }
    if (q == next_mark || q == Q0) {
      trace.emplace_back(q, sum.value());
      if (q == next_mark) next_mark *= 10;
    }
  }
  return trace;
}

}  // namespace rfsum
