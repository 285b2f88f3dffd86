#pragma once

// Integer arithmetic for Steiner bundle shapes on P^(N-1): Euler
// characteristics of endomorphism bundles, the generalized Fibonacci
// sequence a_{k+1} = N*a_k - a_{k-1}, the associated Pell-Fermat
// solutions of r^2 - (N^2-4)s^2 = 4, and the simplicity classifier.
//
// All sequence values are arbitrary precision: a_k grows like
// ((N + sqrt(N^2-4))/2)^k and leaves 64 bits quickly.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace steinerlab {

using BigInt = mpz_class;

/// The resolution shape 0 -> O(-1)^s -> O^t -> E -> 0 on P^(N-1).
struct BundleShape {
  long long num_vars = 0;   // N: linear forms live in N variables, N >= 3
  long long twisted = 0;    // s: O(-1) summands (pencil columns), s >= 0
  long long untwisted = 0;  // t: O summands (pencil rows), t >= 1

  bool valid() const {
    return num_vars >= 3 && twisted >= 0 && untwisted >= 1;
  }

  /// The cokernel is locally free only when rank t - s >= N - 1.
  bool is_bundle() const {
    return untwisted - twisted >= num_vars - 1;
  }

  /// Throws std::invalid_argument when the standing hypotheses fail.
  void require_valid() const;

  bool operator==(const BundleShape&) const = default;
};

/// chi(End E) = s^2 - N*s*t + t^2, computed exactly.
BigInt chi_end(const BundleShape& shape);

/// a_0..a_{k_max} for a_0 = 0, a_1 = 1, a_{k+1} = N*a_k - a_{k-1}.
std::vector<BigInt> fibonacci_sequence(long long num_vars, long long k_max);

/// One solution of r^2 - (N^2-4)*s^2 = 4 together with t = (N*s + r)/2.
/// Consecutive solutions satisfy (s_k, t_k) = (a_k, a_{k+1}).
struct PellSolution {
  BigInt r;
  BigInt s;
  BigInt t;
};

/// All Pell solutions with s <= s_bound, ascending in s, starting at (2, 0).
std::vector<PellSolution> pell_solutions(long long num_vars, const BigInt& s_bound);

/// All pairs (a_k, a_{k+1}) with a_{k+1} <= t_bound; these are exactly the
/// integer solutions of s^2 - N*s*t + t^2 = 1 with t > s >= 0.
std::vector<std::pair<BigInt, BigInt>> fibonacci_pairs(long long num_vars,
                                                       const BigInt& t_bound);

enum class Verdict {
  SimpleGeneric,  // chi(End E) <= 0: the generic pencil is simple
  Exceptional,    // chi(End E) = 1: (s,t) = (a_k, a_{k+1}), rigid and simple
  NonSimpleAll,   // chi(End E) >= 2: no pencil at this shape is simple
};

std::string to_string(Verdict v);

struct ClassifyResult {
  Verdict verdict = Verdict::SimpleGeneric;
  BigInt chi;
  std::optional<long long> fib_index;  // k with (s,t) = (a_k, a_{k+1})
  bool is_bundle = false;

  /// "SimpleGeneric", "Exceptional(2)", "NonSimpleAll" -- used by reports.
  std::string verdict_label() const;
};

/// Classifies a shape with t > s >= 0, N >= 3 by the sign of chi(End E).
/// For chi = 1 the Fibonacci index is located and verified, never assumed.
/// Shapes with t - s < N - 1 are still classified but carry is_bundle=false.
ClassifyResult classify(const BundleShape& shape);

}  // namespace steinerlab
