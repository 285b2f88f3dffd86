#pragma once

// Intertwiner systems: the linear equations B*M_i = M_i*A cut out the
// endomorphism space of the bundle presented by the pencil, so the kernel
// dimension measures h^0(End E). Mixed-twist resolutions get the graded
// analogue, plus the exact Euler characteristic chi(End).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "steinerlab/pencil.hpp"

namespace steinerlab {

std::vector<std::uint64_t> default_primes();

/// Integer coefficient matrix whose kernel is the intertwiner space.
struct IntertwinerSystem {
  std::size_t unknowns = 0;   // u: s^2 + t^2 in the pencil case
  std::size_t equations = 0;  // e: N*t*s in the pencil case
  IntMatrix matrix;           // equations x unknowns
};

/// Unknown order: A flattened row-major (s^2 entries), then B flattened
/// row-major (t^2). Equation order: slice i outer, then entries (r, c)
/// row-major; the row for (i, r, c) encodes (B*M_i - M_i*A)_{r,c} = 0.
/// The flattened (I_s, I_t) is always in the kernel.
IntertwinerSystem build_system(const SteinerPencil& p);

/// Graded analogue. Unknowns: phi_A coefficient blocks, then phi_B (t x t,
/// row-major). Block (a, b) of phi_A maps source column b to target column
/// a and holds coefficients of a degree d_b - d_a form (absent when that is
/// negative); blocks are ordered row-major over (a, b) with coefficients in
/// monomials_lex order. Equations: column j outer, then row r, then one row
/// per degree-d_j monomial, encoding coefficients of phi_B*M - M*phi_A = 0.
IntertwinerSystem build_graded_system(const GradedResolution& r);

enum class KernelMode { Modular, Rational, Both };

KernelMode parse_kernel_mode(const std::string& name);  // "modular|rational|both"
std::string to_string(KernelMode mode);

/// Measured intertwiner dimension. dim is min over per-prime kernel
/// dimensions when any primes ran (they can only overestimate the rational
/// value), otherwise the rational dimension. agreement: in Modular mode,
/// all per-prime dimensions equal; in Rational mode, trivially true; in
/// Both mode, the modular minimum equals the rational dimension.
struct KernelReport {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> per_prime_dims;
  std::optional<std::size_t> rational_dim;
  bool agreement = false;
};

/// Dimension of {(A, B) : B*M_i = M_i*A for all i}; equals h^0(End E) for
/// full-column-rank pencils, which is why that flag is a precondition.
KernelReport intertwiner_dim(const SteinerPencil& p, KernelMode mode,
                             const std::vector<std::uint64_t>& primes = default_primes());

KernelReport graded_intertwiner_dim(const GradedResolution& r, KernelMode mode,
                                    const std::vector<std::uint64_t>& primes = default_primes());

/// chi(End F) = t*chi(F) - sum_j chi(F(d_j)) with
/// chi(F(d)) = t*h(d) - sum_j h(d - d_j), where h(d) counts degree-d forms
/// for d >= 0 and is 0 for -N < d < 0. Arguments that would need h at
/// d <= -N (any twist >= N) are rejected. All twists 1 reduces to
/// chi_end(shape) exactly.
BigInt chi_end_graded(long long num_vars, const std::vector<long long>& twists,
                      long long rows);

struct EndoCohomology {
  std::size_t h0 = 0;
  BigInt h1;
  BigInt chi;
  // True for mixed twists: there h1 = h0 - chi relies on vanishing of the
  // higher cohomology of End, proven only in the all-twists-1 case.
  bool h1_conditional = false;
};

EndoCohomology endo_cohomology(const SteinerPencil& p, KernelMode mode,
                               const std::vector<std::uint64_t>& primes = default_primes());
EndoCohomology endo_cohomology(const GradedResolution& r, KernelMode mode,
                               const std::vector<std::uint64_t>& primes = default_primes());

}  // namespace steinerlab
