#include "rfsum/ramanujan.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rfsum/error.hpp"

namespace rfsum {

CqEvaluator::CqEvaluator(const SieveTables& tables, std::int64_t direct_threshold)
    : tables_(&tables), direct_threshold_(direct_threshold) {
  if (direct_threshold < 1) throw InvalidArgument("direct_threshold must be >= 1");
}

std::int64_t CqEvaluator::cq(std::int64_t q, std::int64_t n) const {
  if (q == 0) return 1;
  if (q < 0 || static_cast<std::uint64_t>(q) > tables_->bound()) {
    throw InvalidArgument("c_q: q=" + std::to_string(q) + " outside [0, " +
                          std::to_string(tables_->bound()) + "]");
  }
  const std::int64_t g = std::gcd(q, n);  // gcd(q, 0) == q
  const auto m = static_cast<std::uint64_t>(q / g);
  const int mu = tables_->mu(m);
  if (mu == 0) return 0;
  const auto phi_q = static_cast<std::int64_t>(tables_->phi(static_cast<std::uint64_t>(q)));
  const auto phi_m = static_cast<std::int64_t>(tables_->phi(m));
  return mu * (phi_q / phi_m);
}

std::int64_t CqEvaluator::direct(std::int64_t q, std::int64_t n) const {
  if (q == 0 || std::abs(q) > direct_threshold_) {
    throw InvalidArgument("direct oracle: |q|=" + std::to_string(std::abs(q)) +
                          " outside [1, " + std::to_string(direct_threshold_) + "]");
  }
  return direct_ramanujan_sum(q, n);
}

std::int64_t cq_int(const SieveTables& tables, std::int64_t q, std::int64_t n) {
  return CqEvaluator(tables).cq(q, n);
}

double cq_real(std::uint64_t q, double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (q) {
    case 0:
      return 1.0;
    case 1:
      return std::cos(two_pi * std::fmod(x, 1.0));
    case 2:
      return std::cos(std::numbers::pi * std::fmod(x, 2.0));
    default:
      break;
  }
  const double qd = static_cast<double>(q);
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= q / 2; ++k) {
    if (std::gcd(k, q) != 1) continue;
    // k x mod q keeps the cosine argument small without changing its value
    sum += std::cos(two_pi * std::fmod(static_cast<double>(k) * x, qd) / qd);
  }
  return 2.0 * sum;
}

std::int64_t direct_ramanujan_sum(std::int64_t q, std::int64_t n) {
  if (q == 0) throw InvalidArgument("direct_ramanujan_sum: q must be nonzero");
  const std::int64_t modulus = std::abs(q);
  const double denom = static_cast<double>(q);
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t k = 1; k <= modulus; ++k) {
    if (std::gcd(k, modulus) != 1) continue;
    // exp(2 pi i k n / q) depends on k n only modulo |q|
    const std::int64_t r = ((k % modulus) * (n % modulus)) % modulus;
    acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / denom);
  }
  const double rounded = std::round(acc.real());
  if (std::fabs(acc.imag()) > 1e-6 || std::fabs(acc.real() - rounded) > 1e-6) {
    std::ostringstream msg;
    msg << "direct_ramanujan_sum(" << q << ", " << n << "): residue too large (" << acc.real()
        << ", " << acc.imag() << ")";
    throw ConsistencyError(msg.str());
  }
  return static_cast<std::int64_t>(rounded);
}

bool PropertyReport::all_passed() const noexcept { return failure_count() == 0; }

std::uint64_t PropertyReport::failure_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& c : checks) total += c.failures;
  return total;
}

namespace {

class CheckBuilder {
 public:
  CheckBuilder(std::string id, std::string statement, std::string domain) {
    check_.id = std::move(id);
    check_.statement = std::move(statement);
    check_.domain = std::move(domain);
  }

  template <typename Describe>
  void expect(bool ok, Describe&& describe) {
    ++check_.cases;
    if (ok) return;
    if (check_.failures++ == 0) check_.witness = describe();
  }

  PropertyCheck done() { return std::move(check_); }

 private:
  PropertyCheck check_;
};

bool is_prime(std::int64_t q, const SieveTables& t) {
  return q >= 2 && t.spf(static_cast<std::uint64_t>(q)) == static_cast<std::uint32_t>(q);
}

std::string case_str(const char* name, std::int64_t q, double n, double lhs, double rhs) {
  std::ostringstream s;
  s.precision(17);
  s << name << " q=" << q << " n=" << n << ": " << lhs << " vs " << rhs;
  return s.str();
}

// Real sample points: integers plus fixed non-integer offsets.
std::vector<double> real_grid(std::int64_t n_max) {
  std::vector<double> xs;
  const double offsets[] = {0.0, 0.25, 0.5, 0.1 * std::numbers::sqrt2, 0.7};
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    for (const double off : offsets) xs.push_back(static_cast<double>(n) + off);
  }
  return xs;
}

}  // namespace

PropertyReport check_property_catalog(const SieveTables& tables, std::int64_t q_max,
                                      std::int64_t n_max) {
  if (q_max < 1 || n_max < 1) throw InvalidArgument("q_max and n_max must be >= 1");
  const auto need = static_cast<std::uint64_t>(std::max(q_max * q_max, n_max));
  if (tables.bound() < need) {
    throw InvalidArgument("property catalog needs sieve bound >= " + std::to_string(need));
  }
  const CqEvaluator c(tables, std::max<std::int64_t>(q_max, 1));
  auto phi = [&](std::int64_t q) { return static_cast<std::int64_t>(tables.phi(q)); };
  auto sigma = [&](std::int64_t n) {
    return static_cast<std::int64_t>(sigma_at(tables, static_cast<std::uint64_t>(n)));
  };
  constexpr double kRealTol = 1e-9;

  PropertyReport report;
  report.q_max = q_max;
  report.n_max = n_max;
  auto& out = report.checks;
  const std::string grid = "1<=q<=" + std::to_string(q_max) + ", |n|<=" + std::to_string(n_max);

  {
    CheckBuilder b("int.a", "c_1(n) = 1", "|n|<=" + std::to_string(n_max));
    for (std::int64_t n = -n_max; n <= n_max; ++n) {
      const auto v = c(1, n);
      b.expect(v == 1, [&] { return case_str("c_1", 1, n, v, 1); });
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.b", "c_q(0) = phi(q)", "1<=q<=" + std::to_string(q_max));
    for (std::int64_t q = 1; q <= q_max; ++q) {
      const auto v = c(q, 0);
      b.expect(v == phi(q), [&] { return case_str("c_q(0)", q, 0, v, phi(q)); });
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.c", "c_q(1) = mu(q)", "1<=q<=" + std::to_string(q_max));
    for (std::int64_t q = 1; q <= q_max; ++q) {
      const auto v = c(q, 1);
      b.expect(v == tables.mu(q), [&] { return case_str("c_q(1)", q, 1, v, tables.mu(q)); });
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.d", "c_p(n) = phi(p) if p|n else -1",
                   "prime p<=" + std::to_string(q_max) + ", |n|<=" + std::to_string(n_max) +
                       " (false for composite q, e.g. c_4(2) = -2)");
    for (std::int64_t q = 2; q <= q_max; ++q) {
      if (!is_prime(q, tables)) continue;
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const auto v = c(q, n);
        const std::int64_t want = n % q == 0 ? phi(q) : -1;
        b.expect(v == want, [&] { return case_str("c_p", q, n, v, want); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.e", "c_rs(n) = c_r(n) c_s(n) for gcd(r,s) = 1",
                   "coprime 1<=r,s<=" + std::to_string(q_max) + ", |n|<=" + std::to_string(n_max));
    for (std::int64_t r = 1; r <= q_max; ++r) {
      for (std::int64_t s = 1; s <= q_max; ++s) {
        if (std::gcd(r, s) != 1) continue;
        for (std::int64_t n = -n_max; n <= n_max; ++n) {
          const auto lhs = c(r * s, n);
          const auto rhs = c(r, n) * c(s, n);
          b.expect(lhs == rhs, [&] { return case_str("c_rs", r * s, n, lhs, rhs); });
        }
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.f", "|c_q(n)| <= phi(q)", grid);
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const auto v = c(q, n);
        b.expect(std::abs(v) <= phi(q), [&] { return case_str("|c_q|", q, n, v, phi(q)); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.g", "|c_q(n)| <= sigma(n)",
                   "1<=q<=" + std::to_string(q_max) + ", 1<=n<=" + std::to_string(n_max));
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const auto v = c(q, n);
        b.expect(std::abs(v) <= sigma(n), [&] { return case_str("|c_q|", q, n, v, sigma(n)); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.h", "c_q(n) = c_q(-n)", grid + " (exponential sum at -n vs Hoelder at n)");
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const auto lhs = c(q, n);
        const auto rhs = c.direct(q, -n);
        b.expect(lhs == rhs, [&] { return case_str("c_q(-n)", q, n, lhs, rhs); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("int.i", "c_q(n) = c_{-q}(n)", grid + " (exponential sum at -q vs Hoelder at q)");
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const auto lhs = c(q, n);
        const auto rhs = c.direct(-q, n);
        b.expect(lhs == rhs, [&] { return case_str("c_{-q}", q, n, lhs, rhs); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("extra.divsum", "sum_{d|q} c_d(n) = q [q|n]", grid);
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        std::int64_t s = 0;
        for (std::int64_t d = 1; d <= q; ++d) {
          if (q % d == 0) s += c(d, n);
        }
        const std::int64_t want = n % q == 0 ? q : 0;
        b.expect(s == want, [&] { return case_str("divsum", q, n, s, want); });
      }
    }
    out.push_back(b.done());
  }

  // Real-argument list. q = 0 uses phi(0) = mu(0) = 1.
  const auto xs = real_grid(n_max);
  auto phi0 = [&](std::int64_t q) { return q == 0 ? 1 : phi(q); };
  auto mu0 = [&](std::int64_t q) { return q == 0 ? 1 : tables.mu(q); };
  {
    CheckBuilder b("real.a", "c_q(x) = c_q(n) at integer x = n, q > 0", grid);
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const double lhs = cq_real(q, static_cast<double>(n));
        const auto rhs = c(q, n);
        b.expect(std::fabs(lhs - rhs) <= kRealTol,
                 [&] { return case_str("c_q(x)", q, n, lhs, rhs); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.b", "c_q(0) = phi(q)", "0<=q<=" + std::to_string(q_max) + ", phi(0)=1");
    for (std::int64_t q = 0; q <= q_max; ++q) {
      const double v = cq_real(q, 0.0);
      b.expect(std::fabs(v - phi0(q)) <= kRealTol,
               [&] { return case_str("c_q(0)", q, 0, v, phi0(q)); });
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.c", "c_q(1) = mu(q)", "0<=q<=" + std::to_string(q_max) + ", mu(0)=1");
    for (std::int64_t q = 0; q <= q_max; ++q) {
      const double v = cq_real(q, 1.0);
      b.expect(std::fabs(v - mu0(q)) <= kRealTol,
               [&] { return case_str("c_q(1)", q, 1, v, mu0(q)); });
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.d", "c_rs(x) = c_r(x) c_s(x) for gcd(r,s) = 1",
                   "coprime 1<=r,s<=" + std::to_string(q_max) +
                       ", integer x only (fails off the integers)");
    for (std::int64_t r = 1; r <= q_max; ++r) {
      for (std::int64_t s = 1; s <= q_max; ++s) {
        if (std::gcd(r, s) != 1) continue;
        for (std::int64_t n = -n_max; n <= n_max; ++n) {
          const double x = static_cast<double>(n);
          const double lhs = cq_real(r * s, x);
          const double rhs = cq_real(r, x) * cq_real(s, x);
          b.expect(std::fabs(lhs - rhs) <= kRealTol,
                   [&] { return case_str("c_rs(x)", r * s, x, lhs, rhs); });
        }
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.e", "|c_q(x)| <= phi(q)",
                   "0<=q<=" + std::to_string(q_max) + ", x in integer and non-integer grid");
    for (std::int64_t q = 0; q <= q_max; ++q) {
      for (const double x : xs) {
        const double v = cq_real(q, x);
        b.expect(std::fabs(v) <= phi0(q) + kRealTol,
                 [&] { return case_str("|c_q(x)|", q, x, v, phi0(q)); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.f", "|c_q(x)| <= sigma(x)",
                   "1<=q<=" + std::to_string(q_max) + ", integer 1<=x<=" + std::to_string(n_max) +
                       " only (sigma undefined off the integers)");
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const double v = cq_real(q, static_cast<double>(n));
        b.expect(std::fabs(v) <= sigma(n) + kRealTol,
                 [&] { return case_str("|c_q(x)|", q, n, v, sigma(n)); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.g", "c_q(x) = c_q(-x)",
                   "0<=q<=" + std::to_string(q_max) + ", x in integer and non-integer grid");
    for (std::int64_t q = 0; q <= q_max; ++q) {
      for (const double x : xs) {
        const double lhs = cq_real(q, x);
        const double rhs = cq_real(q, -x);
        b.expect(std::fabs(lhs - rhs) <= 1e-12,
                 [&] { return case_str("c_q(-x)", q, x, lhs, rhs); });
      }
    }
    out.push_back(b.done());
  }
  {
    CheckBuilder b("real.h", "c_q(x) = c_{-q}(x)",
                   grid + ", integer x only (negative modulus defined by the exponential sum)");
    for (std::int64_t q = 1; q <= q_max; ++q) {
      for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const double lhs = cq_real(q, static_cast<double>(n));
        const auto rhs = c.direct(-q, n);
        b.expect(std::fabs(lhs - rhs) <= kRealTol,
                 [&] { return case_str("c_{-q}(x)", q, n, lhs, rhs); });
      }
    }
    out.push_back(b.done());
  }

  report.notes.push_back(
      "int.e is printed as c_rs(n) = c_s(n) c_s(n); checked in the form c_r(n) c_s(n)");
  report.notes.push_back("int.d holds only for prime q: c_4(2) = " + std::to_string(c(4, 2)));
  if (q_max >= 6) {
    std::ostringstream s;
    s.precision(12);
    s << "real.d off the integers: c_6(0.5) = " << cq_real(6, 0.5)
      << " but c_2(0.5) c_3(0.5) = " << cq_real(2, 0.5) * cq_real(3, 0.5);
    report.notes.push_back(s.str());
  }
  return report;
}

}  // namespace rfsum
