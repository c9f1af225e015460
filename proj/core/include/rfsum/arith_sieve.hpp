#pragma once

// Linear-sieve tables of the classical arithmetic functions (smallest prime
// factor, Moebius, Euler totient, von Mangoldt and the modified von Mangoldt
// weight phi(n)Lambda(n)/n) plus a segmented stream of the modified weight
// for bounds that do not fit in memory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rfsum {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{4} << 30;  // 4 GiB
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;

// The one expression every code path uses for Lambda_1, so the monolithic
// table and the segmented stream agree bit-for-bit.
inline double lambda1_value(std::uint64_t phi, double lambda, std::uint64_t n) {
  return static_cast<double>(phi) * lambda / static_cast<double>(n);
}

class SieveTables {
 public:
  // Bytes of table storage per integer covered.
  static constexpr std::uint64_t kBytesPerEntry =
      sizeof(std::uint32_t) + sizeof(std::int8_t) + sizeof(std::uint32_t) +
      2 * sizeof(double);

  std::uint64_t bound() const noexcept { return bound_; }

  // Unchecked accessors, 1 <= n <= bound() (spf needs n >= 2).
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
  int mu(std::uint64_t n) const { return mu_[n]; }
  std::uint32_t phi(std::uint64_t n) const { return phi_[n]; }
  double lambda(std::uint64_t n) const { return lambda_[n]; }
  double lambda1(std::uint64_t n) const { return lambda1_[n]; }

  // Whole tables indexed by n; entry 0 is a zero placeholder.
  std::span<const std::uint32_t> spf_table() const { return spf_; }
  std::span<const std::int8_t> mu_table() const { return mu_; }
  std::span<const std::uint32_t> phi_table() const { return phi_; }
  std::span<const double> lambda_table() const { return lambda_; }
  std::span<const double> lambda1_table() const { return lambda1_; }

  // FNV-1a over the little-endian serialisation of the tables.
  std::uint64_t checksum() const;

 private:
  friend SieveTables build_sieve(std::uint64_t, std::uint64_t);
  friend SieveTables load_sieve(const std::filesystem::path&);

  SieveTables() = default;

  std::uint64_t bound_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> phi_;
  std::vector<double> lambda_;
  std::vector<double> lambda1_;
};

// O(N) Euler sieve. Throws InvalidArgument for N == 0 or N >= 2^32, and
// ResourceLimit when the tables would exceed memory_budget bytes.
SieveTables build_sieve(std::uint64_t bound,
                        std::uint64_t memory_budget = kDefaultMemoryBudget);

// Checked Lambda_1(n); InvalidArgument unless 1 <= n <= tables.bound().
double lambda1_at(const SieveTables& tables, std::uint64_t n);

// sigma(n) and d(n) from the smallest-prime-factor table.
std::uint64_t sigma_at(const SieveTables& tables, std::uint64_t n);
std::uint64_t divisor_count_at(const SieveTables& tables, std::uint64_t n);

// Plain Eratosthenes list of primes <= limit, for Euler products that run
// beyond any table bound.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// Binary dump/restore. Layout (little-endian): 8-byte magic "RFSIEVE\0",
// u32 format version, u32 reserved (0), u64 bound, then for n = 0..bound the
// arrays spf (u32), mu (i8), phi (u32), lambda (f64 bits), lambda1 (f64 bits),
// each array contiguous, and finally the u64 checksum.
inline constexpr std::uint32_t kSieveFormatVersion = 1;
void save_sieve(const SieveTables& tables, const std::filesystem::path& path);
SieveTables load_sieve(const std::filesystem::path& path);

// Cache file name keyed by bound and format version.
std::string sieve_cache_name(std::uint64_t bound);

// Loads `dir/sieve_cache_name(bound)` when present, otherwise builds and (if
// dir is set) writes it.
SieveTables load_or_build_sieve(std::uint64_t bound,
                                const std::optional<std::filesystem::path>& dir,
                                std::uint64_t memory_budget = kDefaultMemoryBudget);

// Lambda_1(1..N) produced segment by segment with a segmented Eratosthenes
// sieve; memory is O(sqrt N + segment_size).
class SegmentedLambdaStream {
 public:
  struct Segment {
    std::uint64_t first = 0;            // n of values[0]
    std::span<const double> values;     // Lambda_1(first), Lambda_1(first+1), ...
  };

  SegmentedLambdaStream(std::uint64_t bound,
                        std::uint64_t segment_size = kDefaultSegmentSize);

  std::uint64_t bound() const noexcept { return bound_; }
  std::uint64_t segment_size() const noexcept { return segment_size_; }
  std::uint64_t cursor() const noexcept { return cursor_; }
  std::uint64_t segment_count() const noexcept;

  // Next segment, or nullopt once 1..bound has been produced. The span is
  // valid until the following call.
  std::optional<Segment> next();

  // Random access to segment `index` (0-based), independent of the cursor,
  // so separate workers can each process distinct segments.
  Segment segment(std::uint64_t index, std::vector<double>& storage,
                  std::vector<std::uint8_t>& scratch) const;

 private:
  std::uint64_t bound_;
  std::uint64_t segment_size_;
  std::uint64_t cursor_ = 0;
  std::vector<std::uint32_t> base_primes_;
  std::vector<double> storage_;
  std::vector<std::uint8_t> scratch_;
};

}  // namespace rfsum
