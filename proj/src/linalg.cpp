#include "steinerlab/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

namespace steinerlab {

long long Rng::uniform_int(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) {
    // Full 64-bit span.
    return static_cast<long long>(static_cast<std::uint64_t>(lo) + next_u64());
  }
  // Largest accepted value; accepted count is an exact multiple of range.
  std::uint64_t bound = UINT64_MAX - (UINT64_MAX % range + 1) % range;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > bound);
  return static_cast<long long>(static_cast<std::uint64_t>(lo) + x % range);
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      long long aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

IntMatrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                            long long lo, long long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.uniform_int(lo, hi);
  return m;
}

IntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t ops) {
  IntMatrix m = IntMatrix::identity(n);
  if (n < 2) return m;
  if (ops == 0) ops = 3 * n;
  constexpr long long kEntryCap = 1 << 20;
  for (std::size_t step = 0; step < ops; ++step) {
    std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(n) - 2));
    if (j >= i) ++j;
    long long kind = rng.uniform_int(0, 5);
    if (kind == 0) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m.at(i, c), m.at(j, c));
      continue;
    }
    if (kind == 1) {
      for (std::size_t c = 0; c < n; ++c) m.at(i, c) = -m.at(i, c);
      continue;
    }
    long long coef = rng.uniform_int(1, 2);
    if (rng.uniform_int(0, 1) == 1) coef = -coef;
    // Skip shears that would blow up entries; keeps everything word-sized.
    long long worst = 0;
    for (std::size_t c = 0; c < n; ++c)
      worst = std::max(worst, std::abs(m.at(i, c)) + 2 * std::abs(m.at(j, c)));
    if (worst > kEntryCap) continue;
    for (std::size_t c = 0; c < n; ++c) m.at(i, c) += coef * m.at(j, c);
  }
  return m;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for every 64-bit integer.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// Montgomery arithmetic for odd p < 2^62. Residues are kept raw and the
// REDC product is used as the field multiplication: that computes a*b/2^64
// mod p, which is the honest product twisted by a fixed unit, so ranks and
// kernel dimensions are unchanged and no form conversions are needed.
struct Mont {
  std::uint64_t p;
  std::uint64_t ninv;  // -p^{-1} mod 2^64
  std::uint64_t one;   // 2^64 mod p, the multiplicative identity here

  explicit Mont(std::uint64_t p_) : p(p_) {
    std::uint64_t inv = p;  // Newton lifting doubles correct bits each round
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    ninv = ~inv + 1;
    one = (~0ULL % p) + 1;
    if (one == p) one = 0;
  }

  std::uint64_t redc(__uint128_t t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * ninv;
    std::uint64_t r = static_cast<std::uint64_t>((t + static_cast<__uint128_t>(m) * p) >> 64);
    return r >= p ? r - p : r;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return redc(static_cast<__uint128_t>(a) * b);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t inverse(std::uint64_t a) const { return pow(a, p - 2); }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
};

void check_field_prime(std::uint64_t p) {
  if (p < 3 || (p & 1) == 0 || p >= (1ULL << 62) || !is_prime_u64(p))
    throw std::invalid_argument("prime field modulus must be an odd prime below 2^62, got " +
                                std::to_string(p));
}

}  // namespace

PrimeFieldMatrix PrimeFieldMatrix::reduce(const IntMatrix& m, std::uint64_t p) {
  check_field_prime(p);
  PrimeFieldMatrix out;
  out.p = p;
  out.rows = m.rows;
  out.cols = m.cols;
  out.entries.resize(m.rows * m.cols);
  long long sp = static_cast<long long>(p);
  for (std::size_t k = 0; k < m.data.size(); ++k) {
    long long v = m.data[k] % sp;
    if (v < 0) v += sp;
    out.entries[k] = static_cast<std::uint64_t>(v);
  }
  return out;
}

std::size_t rank_mod_p(const PrimeFieldMatrix& m) {
  check_field_prime(m.p);
  if (m.rows == 0 || m.cols == 0) return 0;
  Mont mont(m.p);
  std::vector<std::uint64_t> a = m.entries;
  const std::size_t rows = m.rows, cols = m.cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = col; c < cols; ++c)
        std::swap(a[pivot * cols + c], a[rank * cols + c]);
    std::uint64_t inv = mont.inverse(a[rank * cols + col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t head = a[r * cols + col];
      if (head == 0) continue;
      std::uint64_t f = mont.mul(head, inv);
      a[r * cols + col] = 0;
      const std::uint64_t* src = &a[rank * cols];
      std::uint64_t* dst = &a[r * cols];
      for (std::size_t c = col + 1; c < cols; ++c)
        dst[c] = mont.sub(dst[c], mont.mul(f, src[c]));
    }
    ++rank;
  }
  return rank;
}

std::size_t kernel_dim_mod_p(const PrimeFieldMatrix& m) {
  return m.cols - rank_mod_p(m);
}

RationalMatrix RationalMatrix::from_int(const IntMatrix& m) {
  RationalMatrix out(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) out.entries[k] = static_cast<long>(m.data[k]);
  return out;
}

namespace {

// Fraction-free elimination; entries stay minors of the input, each step
// divides exactly by the previous pivot. Pivot choice: smallest nonzero in
// bit size, for growth control, ties to the lowest row.
std::size_t bareiss_rank(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                         const BareissOptions& opts) {
  if (rows == 0 || cols == 0) return 0;
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rows;
    std::size_t best_bits = 0;
    for (std::size_t r = rank; r < rows; ++r) {
      const mpz_class& v = a[r * cols + col];
      if (v == 0) continue;
      std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
      if (pivot == rows || bits < best_bits) {
        pivot = r;
        best_bits = bits;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = col; c < cols; ++c)
        std::swap(a[pivot * cols + c], a[rank * cols + c]);
    const mpz_class piv = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      mpz_class head = a[r * cols + col];
      a[r * cols + col] = 0;
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_class& cur = a[r * cols + c];
        mpz_class num = piv * cur - head * a[rank * cols + c];
        mpz_divexact(cur.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        std::size_t bits = mpz_sizeinbase(cur.get_mpz_t(), 2);
        if (bits > opts.max_entry_bits)
          throw ResourceLimitError("fraction-free elimination entry reached " +
                                   std::to_string(bits) + " bits, over the limit of " +
                                   std::to_string(opts.max_entry_bits));
      }
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t kernel_dim_rational(const RationalMatrix& m, const BareissOptions& opts) {
  std::vector<mpz_class> a(m.rows * m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    // Clear denominators row by row; row scaling never moves the kernel.
    mpz_class lcm = 1;
    for (std::size_t c = 0; c < m.cols; ++c)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
    for (std::size_t c = 0; c < m.cols; ++c) {
      const mpq_class& q = m.at(r, c);
      mpz_class scale;
      mpz_divexact(scale.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
      a[r * m.cols + c] = q.get_num() * scale;
    }
  }
  std::size_t rank = bareiss_rank(a, m.rows, m.cols, opts);
  return m.cols - rank;
}

std::size_t rank_exact(const IntMatrix& m, const BareissOptions& opts) {
  if (m.rows == 0 || m.cols == 0) return 0;
  std::size_t fast = rank_mod_p(PrimeFieldMatrix::reduce(m, kDefaultPrimes[0]));
  if (fast == std::min(m.rows, m.cols)) return fast;
  std::vector<mpz_class> a(m.rows * m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) a[k] = static_cast<long>(m.data[k]);
  return bareiss_rank(a, m.rows, m.cols, opts);
}

}  // namespace steinerlab
