#pragma once

// Experiment harness behind the CLI: seeded sweeps over (N, s, t) grids
// with per-cell measurements, CSV/JSON reporting, and the pinned
// regression suite against golden values.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "steinerlab/endo.hpp"
#include "steinerlab/numtheory.hpp"
#include "steinerlab/pencil.hpp"

namespace steinerlab {

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  std::vector<long long> n_values{3, 4, 5};
  long long s_min = 1;
  long long s_max = 4;
  long long t_min = 1;
  long long t_max = 12;
  bool require_bundle = true;  // keep only cells with t - s >= N - 1
  int samples = 5;
  std::uint64_t seed = 0;
  long long entry_lo = kDefaultEntryLo;
  long long entry_hi = kDefaultEntryHi;
  KernelMode mode = KernelMode::Modular;
  std::vector<std::uint64_t> primes = default_primes();

  /// Throws std::invalid_argument when ranges are empty, samples < 1,
  /// or entry_lo >= entry_hi.
  void require_valid() const;
};

/// One grid cell. samples counts the measurements that actually ran, so
/// the histogram always totals samples; error is empty for clean cells.
struct SweepRow {
  long long n = 0;
  long long s = 0;
  long long t = 0;
  BigInt chi_end;
  std::string verdict;
  bool is_bundle = false;
  int samples = 0;
  std::map<std::size_t, int> dims_histogram;
  double fraction_dim_1 = 0.0;
  std::size_t min_dim = 0;
  std::size_t max_dim = 0;
  std::uint64_t seed = 0;  // the cell's own derived seed
  std::string error;
};

/// Mixes the base seed with the cell coordinates (splitmix64 rounds) so
/// every cell owns an independent stream and the sweep is reproducible
/// regardless of evaluation order.
std::uint64_t cell_seed(std::uint64_t base_seed, long long n, long long s, long long t);

/// Evaluates every cell of the grid, in parallel when STEINERLAB_THREADS
/// allows, and returns rows ordered by (N, s, t). Per-cell failures land
/// in the error field; the run continues.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

/// Header plus one line per row; column order matches the SweepRow fields
/// with error appended last. Histogram cells look like "1:4;2:1".
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// {"schema_version": ..., "config": {...}, "rows": [...]}; big integers
/// are emitted as strings.
std::string sweep_to_json(const std::vector<SweepRow>& rows, const ExperimentConfig& config);

/// Pinned reference values for the regression suite. Defaults reproduce
/// the published numbers; a JSON file can override them.
struct GoldenValues {
  // The mixed-twist resolution with chi(End F) = -3 but h0(End F) = 5.
  long long mixed_num_vars = 3;
  std::vector<long long> mixed_twists{2, 1, 1, 1, 1};
  long long mixed_rows = 16;
  BigInt mixed_chi = -3;
  std::size_t mixed_h0 = 5;
  int mixed_samples = 3;

  // Sequence pairs (a_k, a_{k+1}) cross-checked against the Pell route.
  std::vector<long long> pair_num_vars{3, 4, 5};
  long long pair_bound = 300;

  // Exceptional shapes whose generic pencils must measure this dimension.
  long long exceptional_num_vars = 3;
  std::vector<std::pair<long long, long long>> exceptional_pairs{{1, 3}, {3, 8}, {8, 21}};
  std::size_t exceptional_dim = 1;

  static GoldenValues from_json_file(const std::string& path);
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Check names in run order, for --list style output.
std::vector<std::string> verify_paper_check_names(const GoldenValues& golden = GoldenValues{});

/// Runs the whole suite; one result per check, never throws on a failed
/// comparison (only on malformed golden values).
std::vector<CheckResult> verify_paper(const GoldenValues& golden = GoldenValues{},
                                      std::uint64_t seed = 0);

}  // namespace steinerlab
