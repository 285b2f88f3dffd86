#include "steinerlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace steinerlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t acc, std::uint64_t v) {
  return splitmix64(acc ^ v);
}

std::size_t thread_count_from_env(std::size_t jobs) {
  std::size_t n = 0;
  if (const char* env = std::getenv("STEINERLAB_THREADS")) {
    char* end = nullptr;
    unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) n = parsed;
  }
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return std::min({n, jobs, std::size_t{64}});
}

SweepRow evaluate_cell(const ExperimentConfig& cfg, long long n, long long s, long long t) {
  SweepRow row;
  row.n = n;
  row.s = s;
  row.t = t;
  row.seed = cell_seed(cfg.seed, n, s, t);
  try {
    BundleShape shape{n, s, t};
    ClassifyResult cls = classify(shape);
    row.chi_end = cls.chi;
    row.verdict = cls.verdict_label();
    row.is_bundle = cls.is_bundle;
    Rng rng(row.seed);
    for (int k = 0; k < cfg.samples; ++k) {
      SteinerPencil p = sample_pencil(rng, shape, cfg.entry_lo, cfg.entry_hi);
      KernelReport rep = intertwiner_dim(p, cfg.mode, cfg.primes);
      row.dims_histogram[rep.dim] += 1;
      row.samples += 1;
    }
  } catch (const std::exception& ex) {
    row.error = ex.what();
  }
  if (!row.dims_histogram.empty()) {
    row.min_dim = row.dims_histogram.begin()->first;
    row.max_dim = row.dims_histogram.rbegin()->first;
    auto it = row.dims_histogram.find(1);
    int ones = it == row.dims_histogram.end() ? 0 : it->second;
    row.fraction_dim_1 = static_cast<double>(ones) / static_cast<double>(row.samples);
  }
  return row;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string histogram_text(const std::map<std::size_t, int>& h) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [dim, count] : h) {
    if (!first) os << ';';
    os << dim << ':' << count;
    first = false;
  }
  return os.str();
}

nlohmann::json row_to_json(const SweepRow& row) {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& [dim, count] : row.dims_histogram)
    hist.push_back({{"dim", dim}, {"count", count}});
  return {
      {"N", row.n},
      {"s", row.s},
      {"t", row.t},
      {"chi_end", row.chi_end.get_str()},
      {"verdict", row.verdict},
      {"is_bundle", row.is_bundle},
      {"samples", row.samples},
      {"dims_histogram", std::move(hist)},
      {"fraction_dim_1", row.fraction_dim_1},
      {"min_dim", row.min_dim},
      {"max_dim", row.max_dim},
      {"seed", row.seed},
      {"error", row.error},
  };
}

BigInt big_from_json(const nlohmann::json& v) {
  if (v.is_string()) return BigInt(v.get<std::string>());
  return BigInt(static_cast<long>(v.get<long long>()));
}

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::vector<Check> build_checks(const GoldenValues& g, std::uint64_t seed) {
  std::vector<Check> checks;

  checks.push_back({"mixed-example-chi", [g] {
    BigInt got = chi_end_graded(g.mixed_num_vars, g.mixed_twists, g.mixed_rows);
    std::ostringstream os;
    os << "chi(End F) = " << got.get_str() << ", expected " << g.mixed_chi.get_str();
    return std::make_pair(got == g.mixed_chi, os.str());
  }});

  checks.push_back({"mixed-example-h0", [g, seed] {
    for (int i = 0; i < g.mixed_samples; ++i) {
      Rng rng(mix(mix(seed, 0xA11CEULL), static_cast<std::uint64_t>(i)));
      GradedResolution r = sample_graded(rng, g.mixed_num_vars, g.mixed_twists,
                                         g.mixed_rows, kDefaultEntryLo, kDefaultEntryHi);
      KernelReport rep = graded_intertwiner_dim(r, KernelMode::Modular);
      if (rep.dim != g.mixed_h0) {
        std::ostringstream os;
        os << "sample " << i << " measured h0 = " << rep.dim << ", expected " << g.mixed_h0;
        return std::make_pair(false, os.str());
      }
    }
    std::ostringstream os;
    os << g.mixed_samples << " samples all measured h0 = " << g.mixed_h0;
    return std::make_pair(true, os.str());
  }});

  for (long long n : g.pair_num_vars) {
    std::ostringstream name;
    name << "pair-tables-N" << n;
    checks.push_back({name.str(), [g, n] {
      auto fib = fibonacci_pairs(n, BigInt(static_cast<long>(g.pair_bound)));
      std::vector<std::pair<BigInt, BigInt>> pell;
      for (const PellSolution& sol : pell_solutions(n, BigInt(static_cast<long>(g.pair_bound)))) {
        if (sol.t <= static_cast<long>(g.pair_bound) && sol.t > sol.s)
          pell.emplace_back(sol.s, sol.t);
      }
      if (fib != pell)
        return std::make_pair(false, std::string("sequence route and Pell route disagree"));
      for (const auto& [s, t] : fib) {
        if (s * s - static_cast<long>(n) * s * t + t * t != 1) {
          std::ostringstream os;
          os << "pair (" << s.get_str() << ", " << t.get_str()
             << ") fails the unit equation";
          return std::make_pair(false, os.str());
        }
      }
      std::ostringstream os;
      os << fib.size() << " pairs agree on both routes";
      return std::make_pair(true, os.str());
    }});
  }

  for (const auto& [ps, pt] : g.exceptional_pairs) {
    std::ostringstream name;
    name << "exceptional-dim-N" << g.exceptional_num_vars << "-s" << ps << "-t" << pt;
    long long s = ps;
    long long t = pt;
    checks.push_back({name.str(), [g, s, t, seed] {
      BundleShape shape{g.exceptional_num_vars, s, t};
      ClassifyResult cls = classify(shape);
      if (cls.verdict != Verdict::Exceptional) {
        return std::make_pair(false,
                              "classifier verdict is " + cls.verdict_label() +
                                  ", expected Exceptional");
      }
      Rng rng(mix(mix(mix(seed, 0xE0ULL), static_cast<std::uint64_t>(s)),
                  static_cast<std::uint64_t>(t)));
      SteinerPencil p = sample_pencil(rng, shape, kDefaultEntryLo, kDefaultEntryHi);
      KernelReport rep = intertwiner_dim(p, KernelMode::Modular);
      std::ostringstream os;
      os << "measured dim = " << rep.dim << ", expected " << g.exceptional_dim;
      return std::make_pair(rep.dim == g.exceptional_dim, os.str());
    }});
  }

  return checks;
}

}  // namespace

void ExperimentConfig::require_valid() const {
  if (n_values.empty()) throw std::invalid_argument("config: n_values is empty");
  for (long long n : n_values)
    if (n < 3) throw std::invalid_argument("config: every N must be >= 3");
  if (s_min < 0 || s_max < s_min) throw std::invalid_argument("config: bad s range");
  if (t_min < 1 || t_max < t_min) throw std::invalid_argument("config: bad t range");
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (entry_lo >= entry_hi) throw std::invalid_argument("config: entry range needs lo < hi");
  if (mode != KernelMode::Rational && primes.empty())
    throw std::invalid_argument("config: modular modes need at least one prime");
}

std::uint64_t cell_seed(std::uint64_t base_seed, long long n, long long s, long long t) {
  std::uint64_t h = mix(base_seed, 0x53544C4142ULL);
  h = mix(h, static_cast<std::uint64_t>(n));
  h = mix(h, static_cast<std::uint64_t>(s));
  h = mix(h, static_cast<std::uint64_t>(t));
  return h;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.require_valid();

  std::vector<long long> ns = config.n_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  struct Cell {
    long long n, s, t;
  };
  std::vector<Cell> cells;
  for (long long n : ns)
    for (long long s = std::max(config.s_min, 1LL); s <= config.s_max; ++s)
      for (long long t = std::max(config.t_min, s + 1); t <= config.t_max; ++t) {
        if (config.require_bundle && t - s < n - 1) continue;
        cells.push_back({n, s, t});
      }
  if (cells.empty()) throw std::invalid_argument("config: grid has no cells");

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      rows[i] = evaluate_cell(config, cells[i].n, cells[i].s, cells[i].t);
    }
  };

  std::size_t workers = thread_count_from_env(cells.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "N,s,t,chi_end,verdict,is_bundle,samples,dims_histogram,"
        "fraction_dim_1,min_dim,max_dim,seed,error\n";
  os << std::fixed << std::setprecision(6);
  for (const SweepRow& row : rows) {
    os << row.n << ',' << row.s << ',' << row.t << ',' << row.chi_end.get_str() << ','
       << row.verdict << ',' << (row.is_bundle ? "true" : "false") << ','
       << row.samples << ',' << histogram_text(row.dims_histogram) << ','
       << row.fraction_dim_1 << ',' << row.min_dim << ',' << row.max_dim << ','
       << row.seed << ',' << csv_escape(row.error) << '\n';
  }
  return os.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows, const ExperimentConfig& config) {
  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["config"] = {
      {"n_values", config.n_values},
      {"s_min", config.s_min},
      {"s_max", config.s_max},
      {"t_min", config.t_min},
      {"t_max", config.t_max},
      {"require_bundle", config.require_bundle},
      {"samples", config.samples},
      {"seed", config.seed},
      {"entry_lo", config.entry_lo},
      {"entry_hi", config.entry_hi},
      {"mode", to_string(config.mode)},
      {"primes", config.primes},
  };
  nlohmann::json jrows = nlohmann::json::array();
  for (const SweepRow& row : rows) jrows.push_back(row_to_json(row));
  out["rows"] = std::move(jrows);
  return out.dump(2) + "\n";
}

GoldenValues GoldenValues::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open golden file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw std::runtime_error("golden file " + path + ": " + ex.what());
  }
  GoldenValues g;
  try {
    if (j.contains("mixed_example")) {
      const auto& m = j.at("mixed_example");
      if (m.contains("num_vars")) g.mixed_num_vars = m.at("num_vars").get<long long>();
      if (m.contains("twists")) g.mixed_twists = m.at("twists").get<std::vector<long long>>();
      if (m.contains("rows")) g.mixed_rows = m.at("rows").get<long long>();
      if (m.contains("chi_end")) g.mixed_chi = big_from_json(m.at("chi_end"));
      if (m.contains("h0")) g.mixed_h0 = m.at("h0").get<std::size_t>();
      if (m.contains("samples")) g.mixed_samples = m.at("samples").get<int>();
    }
    if (j.contains("pair_tables")) {
      const auto& p = j.at("pair_tables");
      if (p.contains("n_values")) g.pair_num_vars = p.at("n_values").get<std::vector<long long>>();
      if (p.contains("bound")) g.pair_bound = p.at("bound").get<long long>();
    }
    if (j.contains("exceptional")) {
      const auto& e = j.at("exceptional");
      if (e.contains("num_vars")) g.exceptional_num_vars = e.at("num_vars").get<long long>();
      if (e.contains("pairs"))
        g.exceptional_pairs = e.at("pairs").get<std::vector<std::pair<long long, long long>>>();
      if (e.contains("dim")) g.exceptional_dim = e.at("dim").get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw std::runtime_error("golden file " + path + ": " + ex.what());
  }
  return g;
}

std::vector<std::string> verify_paper_check_names(const GoldenValues& golden) {
  std::vector<std::string> names;
  for (const Check& c : build_checks(golden, 0)) names.push_back(c.name);
  return names;
}

std::vector<CheckResult> verify_paper(const GoldenValues& golden, std::uint64_t seed) {
  std::vector<CheckResult> results;
  for (const Check& c : build_checks(golden, seed)) {
    CheckResult res;
    res.name = c.name;
    try {
      auto [ok, detail] = c.run();
      res.passed = ok;
      res.detail = detail;
    } catch (const std::exception& ex) {
      res.passed = false;
      res.detail = std::string("exception: ") + ex.what();
    }
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace steinerlab
