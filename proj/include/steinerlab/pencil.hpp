#pragma once

// Pencils of linear forms M = sum_i x_i * M_i stored as N integer slices,
// their graded (mixed-twist) generalization, seeded sampling, the two
// non-simple witness constructions, and a plain text file format.

#include <stdexcept>
#include <string>
#include <vector>

#include "steinerlab/linalg.hpp"
#include "steinerlab/numtheory.hpp"

namespace steinerlab {

// Entry range used when a caller does not pick one.
inline constexpr long long kDefaultEntryLo = -9;
inline constexpr long long kDefaultEntryHi = 9;

/// A t x s matrix of linear forms in N variables, slice i holding the
/// coefficients of x_i. Row index runs over the t-dimensional side.
struct SteinerPencil {
  BundleShape shape;
  std::vector<IntMatrix> slices;
  bool full_column_rank = false;

  /// Validates slice count and shapes, then computes the full-column-rank
  /// flag from the stacked (N*t) x s matrix.
  static SteinerPencil from_slices(const BundleShape& shape, std::vector<IntMatrix> slices);

  bool operator==(const SteinerPencil&) const = default;
};

/// The N*t x s matrix [M_1; ...; M_N].
IntMatrix stack_slices(const SteinerPencil& p);

/// N random t x s slices with entries in [lo, hi], resampled (at most 16
/// tries) until the stacked matrix has full column rank.
SteinerPencil sample_pencil(Rng& rng, const BundleShape& shape, long long lo, long long hi);

/// binom(N-1+d, N-1): number of degree-d monomials in N variables; d >= 0.
long long monomial_count(long long num_vars, long long degree);

/// Exponent vectors of all degree-d monomials in N variables, in
/// decreasing lexicographic order: for N=3, d=2 the order is
/// (2,0,0),(1,1,0),(1,0,1),(0,2,0),(0,1,1),(0,0,2).
std::vector<std::vector<int>> monomials_lex(long long num_vars, long long degree);

/// Resolution with column j of degree d_j: a map out of a sum of twisted
/// line bundles O(-d_j) into O^t. Column data is one coefficient block of
/// shape (#monomials of degree d_j) x t, rows following monomials_lex.
struct GradedResolution {
  long long num_vars = 0;
  long long rows = 0;                // t
  std::vector<long long> twists;     // d_1 >= ... >= d_s >= 1
  std::vector<IntMatrix> columns;    // columns[j]: monomial_count(N, d_j) x t

  bool all_unit_twists() const;
  /// Throws std::invalid_argument on wrong counts, shapes, or twist order.
  void require_valid() const;

  bool operator==(const GradedResolution&) const = default;
};

GradedResolution sample_graded(Rng& rng, long long num_vars,
                               const std::vector<long long>& twists, long long rows,
                               long long lo, long long hi);

/// Bijective conversions for the all-twists-1 case.
GradedResolution to_graded(const SteinerPencil& p);
SteinerPencil to_pencil(const GradedResolution& r);

enum class WitnessStructure {
  DirectSumWithTrivial,  // E' + O: every slice has an identically zero last row
  BlockDiagonal,         // two independent diagonal blocks
};

/// A pencil built to have extra intertwiners regardless of the sampling.
struct WitnessPencil {
  SteinerPencil pencil;
  WitnessStructure structure = WitnessStructure::DirectSumWithTrivial;
  // Block sizes for BlockDiagonal: columns n1 + n2 = s, rows m1 + m2 = t.
  long long n1 = 0, n2 = 0, m1 = 0, m2 = 0;
  long long predicted_extra_dim = 2;
};

/// Direct sum with the trivial line bundle: a generic (s, t-1) pencil
/// padded with a zero row. Needs rank t - s strictly above N - 1 so the
/// summand is still a bundle shape.
WitnessPencil decomposable_witness(Rng& rng, const BundleShape& shape);

/// Block-diagonal pencil with generic diagonal blocks of sizes
/// (rows m1, cols n1) and (rows m2, cols n2); scaling each block
/// independently already gives two intertwiner dimensions.
WitnessPencil block_witness(Rng& rng, long long num_vars, long long n1, long long n2,
                            long long m1, long long m2);

/// Malformed pencil/resolution text; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Canonical text form. Pencil: header "steiner N s t", then N blocks of
// t lines of s integers. Graded: header "graded N t", then per column a
// "twist d" line followed by monomial_count(N, d) lines of t integers in
// monomials_lex order. Parsers accept any whitespace layout; writers emit
// exactly the canonical form, so write-parse-write is byte stable.
std::string to_text(const SteinerPencil& p);
std::string to_text(const GradedResolution& r);
SteinerPencil parse_pencil(const std::string& text);
GradedResolution parse_graded(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace steinerlab
