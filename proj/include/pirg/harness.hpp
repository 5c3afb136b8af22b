#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pirg/kernel.hpp"
#include "pirg/sampler.hpp"

namespace pirg {

// Experiment configuration, read from JSON:
//
//   {
//     "name": "er",                       label for the CSV kernel column
//     "kernel": {"kind": "constant", "a": 1},
//     "n": [1000, 2000],                  vertex counts (or a single number)
//     "c": [0.5, 1.0, 1.5],               t = c n ln n ...
//     "t": [10.0],                        ... or explicit intensities
//     "replicates": 200,
//     "seed": 1,
//     "sampler": "global" | "per-pair",
//     "threads": 1,
//     "exact": true,                      exact E/Var of Y_n, P(conn) for n <= 16
//     "memory_cap_bytes": 4294967296,
//     "work_cap": 5e10                    per-pair Poisson draws per row
//   }
//
// Exactly one of "c" and "t" must be present.
struct ExperimentConfig {
  std::string name = "kernel";
  nlohmann::json kernel_spec;
  Kernel kernel = Kernel::constant(1.0);
  std::vector<std::size_t> n_values;
  std::vector<double> c_values;
  std::vector<double> t_values;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::Global;
  unsigned threads = 1;
  bool exact = true;
  double memory_cap_bytes = 4.0 * 1024 * 1024 * 1024;
  double work_cap = 5e10;

  bool uses_c_grid() const noexcept { return !c_values.empty(); }
};

// Throws ParseError naming the offending field.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

// t = c n ln n.
double intensity_for(double c, std::size_t n) noexcept;

// Nearest-rank quantiles of a per-replicate statistic.
struct Quantiles {
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;

  friend bool operator==(const Quantiles&, const Quantiles&) = default;
};

struct SweepRow {
  std::string kernel;
  std::size_t n = 0;
  double c = 0.0;
  double t = 0.0;
  std::size_t replicates = 0;
  double frac_connected = 0.0;
  double se = 0.0;  // sqrt(p(1-p)/R)
  double mean_isolated = 0.0;
  double var_isolated = 0.0;  // unbiased sample variance
  std::optional<double> exact_expected_isolated;
  std::optional<double> exact_var_isolated;
  std::optional<double> exact_connected;
  double nu0 = 0.0;
  std::optional<double> c_star;
  double seconds = 0.0;

  // Sidecar-only fields.
  Method nu0_method = Method::Exact;
  Quantiles largest_component;
  Quantiles smallest_component;
  double mean_components = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// One row per (n, c) (or (n, t)) in config order, n outermost. Replicate r of
// row k draws from SeedSpec{seed, r, (k << 8) | Purpose::Sweep}; results
// are merged by replicate index, so output does not depend on `threads`.
// Progress goes to `log` when non-null.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::ostream* log = nullptr);

struct OracleCheck {
  std::size_t n = 0;
  double t = 0.0;
  std::size_t replicates = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double se = 0.0;  // sqrt(exact (1 - exact) / R)
  double z = 0.0;   // (empirical - exact) / se; 0 when both agree exactly
};

// Requires a single n <= 16 and a single c or t value.
OracleCheck run_oracle_check(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "kernel,n,c,t,R,frac_connected,se,mean_Y,var_Y,exact_EY,exact_VarY,exact_Pconn,nu0,c_star,"
    "seconds";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// Parses the CSV columns back; sidecar-only fields stay default.
std::vector<SweepRow> read_csv(std::istream& in);

nlohmann::json to_json(const SweepRow& row);

// Writes `path` (CSV) and `path` + ".json" (config, toolkit version, full
// rows). Throws ArgumentError for an empty table, IoError when a file cannot
// be written.
void emit_report(const std::vector<SweepRow>& rows, const ExperimentConfig& config,
                 const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace pirg
