#include "rfsum/arith_sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "rfsum/error.hpp"

namespace rfsum {
namespace {

constexpr std::array<char, 8> kMagic = {'R', 'F', 'S', 'I', 'E', 'V', 'E', '\0'};

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

template <typename T>
void to_little_endian(T value, unsigned char* out) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out[i] = static_cast<unsigned char>(bits & 0xFFu);
    bits = static_cast<U>(bits >> 8);
  }
}

template <typename T>
T from_little_endian(const unsigned char* in) {
  using U = std::make_unsigned_t<T>;
  U bits = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) bits = static_cast<U>((bits << 8) | in[i]);
  return static_cast<T>(bits);
}

// Streams each array through a sink as little-endian bytes, in file order.
template <typename Sink>
void serialize_arrays(const SieveTables& t, Sink&& sink) {
  std::vector<unsigned char> buf;
  auto emit = [&](auto span, auto convert) {
    using Out = decltype(convert(span[0]));
    buf.resize(span.size() * sizeof(Out));
    for (std::size_t i = 0; i < span.size(); ++i) {
      to_little_endian<Out>(convert(span[i]), buf.data() + i * sizeof(Out));
    }
    sink(buf.data(), buf.size());
  };
  auto ident = [](auto v) { return v; };
  auto dbits = [](double v) { return std::bit_cast<std::uint64_t>(v); };
  emit(t.spf_table(), ident);
  emit(t.mu_table(), ident);
  emit(t.phi_table(), ident);
  emit(t.lambda_table(), dbits);
  emit(t.lambda1_table(), dbits);
}

void check_bound(std::uint64_t bound, std::uint64_t memory_budget) {
  if (bound == 0) throw InvalidArgument("sieve bound must be >= 1");
  if (bound >= std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("sieve bound " + std::to_string(bound) +
                          " exceeds the 32-bit table range");
  }
  const std::uint64_t bytes = (bound + 1) * SieveTables::kBytesPerEntry;
  if (bytes > memory_budget) {
    throw ResourceLimit("sieve bound " + std::to_string(bound) + " needs " +
                        std::to_string(bytes) + " bytes, over the memory budget of " +
                        std::to_string(memory_budget) + " bytes");
  }
}

}  // namespace

std::uint64_t SieveTables::checksum() const {
  std::uint64_t h = kFnvOffset;
  serialize_arrays(*this, [&](const unsigned char* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= kFnvPrime;
    }
  });
  return h;
}

SieveTables build_sieve(std::uint64_t bound, std::uint64_t memory_budget) {
  check_bound(bound, memory_budget);
  const auto n_max = static_cast<std::uint32_t>(bound);

  SieveTables t;
  t.bound_ = bound;
  t.spf_.assign(bound + 1, 0);
  t.mu_.assign(bound + 1, 0);
  t.phi_.assign(bound + 1, 0);
  t.lambda_.assign(bound + 1, 0.0);
  t.lambda1_.assign(bound + 1, 0.0);

  t.mu_[1] = 1;
  t.phi_[1] = 1;

  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= n_max; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = i;
      t.mu_[i] = -1;
      t.phi_[i] = i - 1;
      t.lambda_[i] = std::log(static_cast<double>(i));
      primes.push_back(i);
    }
    const std::uint32_t spf_i = t.spf_[i];
    for (const std::uint32_t p : primes) {
      if (p > spf_i) break;
      const std::uint64_t m = std::uint64_t{p} * i;
      if (m > n_max) break;
      t.spf_[m] = p;
      if (p == spf_i) {
        // p^2 | m
        t.mu_[m] = 0;
        t.phi_[m] = t.phi_[i] * p;
        // i is a power of p exactly when Lambda(i) != 0
        t.lambda_[m] = t.lambda_[i];
      } else {
        t.mu_[m] = static_cast<std::int8_t>(-t.mu_[i]);
        t.phi_[m] = t.phi_[i] * (p - 1);
      }
    }
  }
  for (std::uint64_t n = 2; n <= bound; ++n) {
    if (t.lambda_[n] != 0.0) t.lambda1_[n] = lambda1_value(t.phi_[n], t.lambda_[n], n);
  }
  return t;
}

double lambda1_at(const SieveTables& tables, std::uint64_t n) {
  if (n < 1 || n > tables.bound()) {
    throw InvalidArgument("lambda1_at: n=" + std::to_string(n) + " outside [1, " +
                          std::to_string(tables.bound()) + "]");
  }
  return tables.lambda1(n);
}

namespace {

template <typename PerPrimePower>
std::uint64_t multiplicative_at(const SieveTables& t, std::uint64_t n, const char* name,
                                PerPrimePower f) {
  if (n < 1 || n > t.bound()) {
    throw InvalidArgument(std::string(name) + ": n=" + std::to_string(n) +
                          " outside [1, " + std::to_string(t.bound()) + "]");
  }
  std::uint64_t result = 1;
  while (n > 1) {
    const std::uint64_t p = t.spf(n);
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    result *= f(p, k);
  }
  return result;
}

}  // namespace

std::uint64_t sigma_at(const SieveTables& tables, std::uint64_t n) {
  return multiplicative_at(tables, n, "sigma_at", [](std::uint64_t p, unsigned k) {
    std::uint64_t s = 1, pk = 1;
    for (unsigned i = 0; i < k; ++i) {
      pk *= p;
      s += pk;
    }
    return s;
  });
}

std::uint64_t divisor_count_at(const SieveTables& tables, std::uint64_t n) {
  return multiplicative_at(tables, n, "divisor_count_at",
                           [](std::uint64_t, unsigned k) { return std::uint64_t{k} + 1; });
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("primes_up_to: limit exceeds 32-bit range");
  }
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

void save_sieve(const SieveTables& tables, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  unsigned char header[24];
  std::memcpy(header, kMagic.data(), kMagic.size());
  to_little_endian<std::uint32_t>(kSieveFormatVersion, header + 8);
  to_little_endian<std::uint32_t>(0, header + 12);
  to_little_endian<std::uint64_t>(tables.bound(), header + 16);
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  serialize_arrays(tables, [&](const unsigned char* p, std::size_t n) {
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
  });
  unsigned char tail[8];
  to_little_endian<std::uint64_t>(tables.checksum(), tail);
  out.write(reinterpret_cast<const char*>(tail), sizeof tail);
  if (!out) throw IoError(path.string(), "write failed");
}

SieveTables load_sieve(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  unsigned char header[24];
  if (!in.read(reinterpret_cast<char*>(header), sizeof header)) {
    throw IoError(path.string(), "truncated header");
  }
  if (std::memcmp(header, kMagic.data(), kMagic.size()) != 0) {
    throw IoError(path.string(), "bad magic");
  }
  const auto version = from_little_endian<std::uint32_t>(header + 8);
  if (version != kSieveFormatVersion) {
    throw IoError(path.string(), "unsupported format version " + std::to_string(version));
  }
  const auto bound = from_little_endian<std::uint64_t>(header + 16);
  if (bound == 0 || bound >= std::numeric_limits<std::uint32_t>::max()) {
    throw IoError(path.string(), "implausible bound " + std::to_string(bound));
  }

  SieveTables t;
  t.bound_ = bound;
  const std::size_t count = bound + 1;
  std::vector<unsigned char> buf;
  auto read_array = [&](auto& vec, auto convert, std::size_t width) {
    buf.resize(count * width);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
      throw IoError(path.string(), "truncated table data");
    }
    vec.resize(count);
    for (std::size_t i = 0; i < count; ++i) vec[i] = convert(buf.data() + i * width);
  };
  read_array(t.spf_, from_little_endian<std::uint32_t>, 4);
  read_array(t.mu_, from_little_endian<std::int8_t>, 1);
  read_array(t.phi_, from_little_endian<std::uint32_t>, 4);
  auto as_double = [](const unsigned char* p) {
    return std::bit_cast<double>(from_little_endian<std::uint64_t>(p));
  };
  read_array(t.lambda_, as_double, 8);
  read_array(t.lambda1_, as_double, 8);

  unsigned char tail[8];
  if (!in.read(reinterpret_cast<char*>(tail), sizeof tail)) {
    throw IoError(path.string(), "missing checksum");
  }
  if (from_little_endian<std::uint64_t>(tail) != t.checksum()) {
    throw IoError(path.string(), "checksum mismatch");
  }
  return t;
}

std::string sieve_cache_name(std::uint64_t bound) {
  return "sieve-v" + std::to_string(kSieveFormatVersion) + "-" + std::to_string(bound) + ".bin";
}

SieveTables load_or_build_sieve(std::uint64_t bound,
                                const std::optional<std::filesystem::path>& dir,
                                std::uint64_t memory_budget) {
  if (!dir) return build_sieve(bound, memory_budget);
  const auto path = *dir / sieve_cache_name(bound);
  if (std::filesystem::exists(path)) return load_sieve(path);
  auto tables = build_sieve(bound, memory_budget);
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) throw IoError(dir->string(), "cannot create cache directory: " + ec.message());
  save_sieve(tables, path);
  return tables;
}

// --- segmented stream -----------------------------------------------------

SegmentedLambdaStream::SegmentedLambdaStream(std::uint64_t bound, std::uint64_t segment_size)
    : bound_(bound), segment_size_(segment_size) {
  if (bound == 0) throw InvalidArgument("stream bound must be >= 1");
  if (segment_size == 0) throw InvalidArgument("segment size must be >= 1");
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound)));
  while (root * root > bound) --root;
  while ((root + 1) * (root + 1) <= bound) ++root;
  base_primes_ = primes_up_to(root);
}

std::uint64_t SegmentedLambdaStream::segment_count() const noexcept {
  return (bound_ + segment_size_ - 1) / segment_size_;
}

std::optional<SegmentedLambdaStream::Segment> SegmentedLambdaStream::next() {
  if (cursor_ >= segment_count()) return std::nullopt;
  return segment(cursor_++, storage_, scratch_);
}

SegmentedLambdaStream::Segment SegmentedLambdaStream::segment(
    std::uint64_t index, std::vector<double>& storage,
    std::vector<std::uint8_t>& scratch) const {
  const std::uint64_t lo = index * segment_size_ + 1;
  if (index >= segment_count()) throw InvalidArgument("segment index out of range");
  const std::uint64_t hi = std::min(bound_, lo + segment_size_ - 1);
  const std::size_t len = hi - lo + 1;
  storage.assign(len, 0.0);
  scratch.assign(len, 1);  // 1 = no prime factor <= sqrt(bound) found yet

  for (const std::uint64_t p : base_primes_) {
    const std::uint64_t first = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = first; m <= hi; m += p) scratch[m - lo] = 0;
  }
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
    if (scratch[n - lo]) {
      storage[n - lo] = lambda1_value(n - 1, std::log(static_cast<double>(n)), n);
    }
  }
  // Prime powers p^k, k >= 2, all have p <= sqrt(bound).
  for (const std::uint64_t p : base_primes_) {
    const double log_p = std::log(static_cast<double>(p));
    std::uint64_t prev = p;
    for (std::uint64_t pk = p * p; pk <= hi; prev = pk, pk *= p) {
      if (pk >= lo) storage[pk - lo] = lambda1_value(pk - prev, log_p, pk);
      if (pk > hi / p) break;
    }
  }
  return Segment{lo, storage};
}

}  // namespace rfsum
