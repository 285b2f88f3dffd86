#pragma once

// Exact dense linear algebra: rank and kernel dimension over word-sized
// prime fields and over the rationals, plus deterministic seeded sampling
// of integer matrices. No floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace steinerlab {

// Default verification primes, the three largest below 2^62:
//   2^62 - 57, 2^62 - 87, 2^62 - 117.
// Kernel dimension mod p can only overestimate the rational one for an
// integer matrix (it jumps exactly when p divides a maximal nonzero minor),
// so the minimum across primes is reported downstream.
inline constexpr std::uint64_t kDefaultPrimes[3] = {
    4611686018427387847ULL,
    4611686018427387817ULL,
    4611686018427387787ULL,
};

/// Deterministic 64-bit stream: mt19937_64 core (whose raw output is pinned
/// by the standard) with a local rejection-sampled range map, so identical
/// seeds give identical samples on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the inclusive range [lo, hi]; requires lo <= hi.
  long long uniform_int(long long lo, long long hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<long long> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  long long& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  long long at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static IntMatrix identity(std::size_t n);

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

/// Entries i.i.d. uniform on [lo, hi], filled row-major; requires lo < hi.
IntMatrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                            long long lo, long long hi);

/// Random product of signed elementary row operations applied to the
/// identity: determinant +-1, hence invertible modulo every prime. Entry
/// growth is kept tame by bounding the shear coefficients.
IntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t ops = 0);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Residue matrix mod an odd prime p < 2^62; entries reduced to [0, p).
struct PrimeFieldMatrix {
  std::uint64_t p = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> entries;

  static PrimeFieldMatrix reduce(const IntMatrix& m, std::uint64_t p);
};

std::size_t rank_mod_p(const PrimeFieldMatrix& m);
std::size_t kernel_dim_mod_p(const PrimeFieldMatrix& m);

/// Exact rationals, canonicalized by GMP.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpq_class> entries;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  mpq_class& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const mpq_class& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  static RationalMatrix from_int(const IntMatrix& m);
};

/// Thrown when fraction-free elimination exceeds the entry bit budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BareissOptions {
  // Generous for desk-scale systems; Hadamard growth on the pencil systems
  // handled here stays in the hundreds of bits.
  std::size_t max_entry_bits = 1u << 20;
};

/// Exact kernel dimension over Q via row-wise denominator clearing followed
/// by fraction-free (Bareiss) elimination. Intended for small instances.
std::size_t kernel_dim_rational(const RationalMatrix& m, const BareissOptions& opts = {});

/// Exact rank of an integer matrix. Fast path: rank mod the first default
/// prime proves the answer whenever it is full; otherwise falls back to
/// fraction-free elimination over Z.
std::size_t rank_exact(const IntMatrix& m, const BareissOptions& opts = {});

}  // namespace steinerlab
