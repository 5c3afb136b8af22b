#include "pirg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pirg/analysis.hpp"
#include "pirg/edge_list.hpp"
#include "pirg/errors.hpp"
#include "pirg/graph.hpp"
#include "pirg/kernel_json.hpp"
#include "pirg/rate_table.hpp"
#include "pirg/version.hpp"

namespace pirg {
namespace {

using nlohmann::json;

std::vector<double> number_list(const json& v, const std::string& field) {
  std::vector<double> out;
  auto one = [&](const json& x, const std::string& f) {
    if (!x.is_number()) throw ParseError(f, "expected a number");
    const double d = x.get<double>();
    if (!std::isfinite(d) || d < 0.0) throw ParseError(f, "expected a finite number >= 0");
    out.push_back(d);
  };
  if (v.is_array()) {
    if (v.empty()) throw ParseError(field, "expected a nonempty list");
    for (std::size_t k = 0; k < v.size(); ++k) one(v[k], field + "[" + std::to_string(k) + "]");
  } else {
    one(v, field);
  }
  return out;
}

std::size_t positive_integer(const json& v, const std::string& field, std::size_t min_value) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value)) {
    throw ParseError(field, "expected an integer >= " + std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

// Serial-index -> outcome of one replicate.
struct Outcome {
  bool connected = false;
  std::uint32_t isolated = 0;
  std::uint32_t largest = 0;
  std::uint32_t smallest = 0;
  std::uint32_t count = 0;
};

Outcome observe(const MultiGraph& g) {
  const ComponentReport report = components(g);
  Outcome o;
  o.connected = report.count == 1;
  o.isolated = static_cast<std::uint32_t>(report.isolated);
  o.largest = static_cast<std::uint32_t>(report.sizes.front());
  o.smallest = static_cast<std::uint32_t>(report.sizes.back());
  o.count = static_cast<std::uint32_t>(report.count);
  return o;
}

Quantiles quantiles(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto rank = [&](double q) {
    if (q <= 0.0) return v.front();
    auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(k, 1, v.size()) - 1];
  };
  return {v.front(), rank(0.25), rank(0.5), rank(0.75), v.back()};
}

// Runs `body(r)` for r in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t r = next++; r < count; r = next++) body(r);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void check_capacity(const ExperimentConfig& config) {
  for (std::size_t n : config.n_values) {
    const double cells = static_cast<double>(RateTable::cell_count(n));
    const double per_cell = config.sampler == SamplerKind::Global ? 8.0 + 16.0 : 8.0;
    const double bytes = cells * per_cell;
    if (bytes > config.memory_cap_bytes) {
      throw CapacityError("n = " + std::to_string(n) + " needs about " + format_double(bytes) +
                          " bytes of rate and alias tables, above memory_cap_bytes = " +
                          format_double(config.memory_cap_bytes));
    }
    if (config.sampler == SamplerKind::PerPair) {
      const double draws = cells * static_cast<double>(config.replicates);
      if (draws > config.work_cap) {
        throw CapacityError("per-pair sampling at n = " + std::to_string(n) + " needs " +
                            format_double(draws) + " Poisson draws per row (work_cap = " +
                            format_double(config.work_cap) +
                            "); use the global sampler (--sampler global)");
      }
    }
  }
}

struct RowSpec {
  std::size_t n;
  double c;
  double t;
};

std::vector<RowSpec> row_specs(const ExperimentConfig& config) {
  std::vector<RowSpec> rows;
  for (std::size_t n : config.n_values) {
    if (config.uses_c_grid()) {
      for (double c : config.c_values) rows.push_back({n, c, intensity_for(c, n)});
    } else {
      const double scale = static_cast<double>(n) * std::log(static_cast<double>(n));
      for (double t : config.t_values) rows.push_back({n, t / scale, t});
    }
  }
  return rows;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

json quantiles_json(const Quantiles& q) {
  return {{"min", q.min}, {"q25", q.q25}, {"median", q.median}, {"q75", q.q75}, {"max", q.max}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

double intensity_for(double c, std::size_t n) noexcept {
  const double dn = static_cast<double>(n);
  return c * dn * std::log(dn);
}

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) throw ParseError("config", "expected a JSON object");
  ExperimentConfig cfg;
  if (!doc.contains("kernel")) throw ParseError("kernel", "missing required field");
  cfg.kernel_spec = doc.at("kernel");
  cfg.kernel = kernel_from_json(cfg.kernel_spec, "kernel");
  cfg.name = std::string(to_string(cfg.kernel.kind()));
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("name", "expected a string");
    cfg.name = doc.at("name").get<std::string>();
    if (cfg.name.empty() || cfg.name.find_first_of(",\"\n\r") != std::string::npos) {
      throw ParseError("name", "must be nonempty and free of commas, quotes and newlines");
    }
  }

  if (!doc.contains("n")) throw ParseError("n", "missing required field");
  for (double n : number_list(doc.at("n"), "n")) {
    if (n < 2.0 || n != std::floor(n) || n > 4294967295.0) {
      throw ParseError("n", "vertex counts must be integers >= 2");
    }
    cfg.n_values.push_back(static_cast<std::size_t>(n));
  }
  const bool has_c = doc.contains("c");
  const bool has_t = doc.contains("t");
  if (has_c == has_t) throw ParseError("c", "exactly one of 'c' and 't' must be given");
  if (has_c) cfg.c_values = number_list(doc.at("c"), "c");
  if (has_t) cfg.t_values = number_list(doc.at("t"), "t");

  if (doc.contains("replicates")) cfg.replicates = positive_integer(doc.at("replicates"), "replicates", 1);
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ParseError("seed", "expected an unsigned 64-bit integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("sampler")) {
    if (!doc.at("sampler").is_string()) throw ParseError("sampler", "expected a string");
    try {
      cfg.sampler = sampler_from_string(doc.at("sampler").get<std::string>());
    } catch (const ArgumentError& e) {
      throw ParseError("sampler", e.what());
    }
  }
  if (doc.contains("threads")) {
    cfg.threads = static_cast<unsigned>(positive_integer(doc.at("threads"), "threads", 1));
  }
  if (doc.contains("exact")) {
    if (!doc.at("exact").is_boolean()) throw ParseError("exact", "expected true or false");
    cfg.exact = doc.at("exact").get<bool>();
  }
  if (doc.contains("memory_cap_bytes")) {
    cfg.memory_cap_bytes = number_list(doc.at("memory_cap_bytes"), "memory_cap_bytes").front();
  }
  if (doc.contains("work_cap")) cfg.work_cap = number_list(doc.at("work_cap"), "work_cap").front();
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json out = {{"name", cfg.name},
              {"kernel", kernel_to_json(cfg.kernel)},
              {"n", cfg.n_values},
              {"replicates", cfg.replicates},
              {"seed", cfg.seed},
              {"sampler", std::string(to_string(cfg.sampler))},
              {"threads", cfg.threads},
              {"exact", cfg.exact},
              {"memory_cap_bytes", cfg.memory_cap_bytes},
              {"work_cap", cfg.work_cap}};
  if (cfg.uses_c_grid()) {
    out["c"] = cfg.c_values;
  } else {
    out["t"] = cfg.t_values;
  }
  return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::ostream* log) {
  check_capacity(config);
  const Nu0 nu = nu0(config.kernel);
  std::optional<double> c_star;
  if (nu.value > 0.0) c_star = 1.0 / nu.value;

  const std::vector<RowSpec> specs = row_specs(config);
  std::vector<SweepRow> rows;
  rows.reserve(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    const RowSpec& spec = specs[k];
    const RateTable rates = build_rate_table(config.kernel, spec.t, spec.n);
    std::optional<GlobalSampler> global;
    if (config.sampler == SamplerKind::Global) global.emplace(rates);

    const std::size_t R = config.replicates;
    std::vector<Outcome> outcomes(R);
    const std::uint64_t purpose = (static_cast<std::uint64_t>(k) << 8) |
                                  static_cast<std::uint64_t>(Purpose::Sweep);
    parallel_for(R, config.threads, [&](std::size_t r) {
      Rng rng = SeedSpec{config.seed, r, purpose}.stream();
      outcomes[r] = observe(global ? (*global)(rng) : sample_per_pair(rates, rng));
    });

    SweepRow row;
    row.kernel = config.name;
    row.n = spec.n;
    row.c = spec.c;
    row.t = spec.t;
    row.replicates = R;
    std::size_t connected = 0;
    double sum_y = 0.0;
    double sum_components = 0.0;
    std::vector<double> largest(R), smallest(R);
    for (std::size_t r = 0; r < R; ++r) {
      connected += outcomes[r].connected ? 1 : 0;
      sum_y += outcomes[r].isolated;
      sum_components += outcomes[r].count;
      largest[r] = outcomes[r].largest;
      smallest[r] = outcomes[r].smallest;
    }
    const double dR = static_cast<double>(R);
    row.frac_connected = static_cast<double>(connected) / dR;
    row.se = std::sqrt(row.frac_connected * (1.0 - row.frac_connected) / dR);
    row.mean_isolated = sum_y / dR;
    double ss = 0.0;
    for (const auto& o : outcomes) {
      const double d = o.isolated - row.mean_isolated;
      ss += d * d;
    }
    row.var_isolated = R > 1 ? ss / (dR - 1.0) : 0.0;
    row.mean_components = sum_components / dR;
    row.largest_component = quantiles(std::move(largest));
    row.smallest_component = quantiles(std::move(smallest));

    if (config.exact) {
      const IsolationStats stats = isolation_stats(rates);
      row.exact_expected_isolated = stats.expected;
      row.exact_var_isolated = stats.variance;
      if (spec.n <= kExactConnectivityMaxN) row.exact_connected = exact_connectivity_prob(rates);
    }
    row.nu0 = nu.value;
    row.nu0_method = nu.method;
    row.c_star = c_star;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) {
      *log << "[sweep] row " << (k + 1) << "/" << specs.size() << " n=" << spec.n
           << " c=" << format_double(spec.c) << " frac_connected=" << row.frac_connected
           << " (" << row.seconds << " s)\n";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

OracleCheck run_oracle_check(const ExperimentConfig& config) {
  const std::size_t values = config.uses_c_grid() ? config.c_values.size() : config.t_values.size();
  if (config.n_values.size() != 1 || values != 1) {
    throw ArgumentError("oracle check: expects a single n and a single c or t");
  }
  const std::size_t n = config.n_values.front();
  if (n > kExactConnectivityMaxN) {
    throw CapacityError("oracle check: n = " + std::to_string(n) + " exceeds the exact limit of " +
                        std::to_string(kExactConnectivityMaxN));
  }
  const double t = config.uses_c_grid() ? intensity_for(config.c_values.front(), n)
                                        : config.t_values.front();
  const RateTable rates = build_rate_table(config.kernel, t, n);
  std::optional<GlobalSampler> global;
  if (config.sampler == SamplerKind::Global) global.emplace(rates);

  const std::size_t R = config.replicates;
  std::vector<std::uint8_t> hit(R, 0);
  parallel_for(R, config.threads, [&](std::size_t r) {
    Rng rng = SeedSpec{config.seed, r, static_cast<std::uint64_t>(Purpose::OracleCheck)}.stream();
    hit[r] = is_connected(global ? (*global)(rng) : sample_per_pair(rates, rng)) ? 1 : 0;
  });

  OracleCheck check;
  check.n = n;
  check.t = t;
  check.replicates = R;
  check.empirical = static_cast<double>(std::count(hit.begin(), hit.end(), 1)) /
                    static_cast<double>(R);
  check.exact = exact_connectivity_prob(rates);
  check.se = std::sqrt(check.exact * (1.0 - check.exact) / static_cast<double>(R));
  const double diff = check.empirical - check.exact;
  if (diff == 0.0) {
    check.z = 0.0;
  } else if (check.se == 0.0) {
    check.z = std::copysign(INFINITY, diff);
  } else {
    check.z = diff / check.se;
  }
  return check;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.kernel << ',' << r.n << ',' << format_double(r.c) << ',' << format_double(r.t) << ','
        << r.replicates << ',' << format_double(r.frac_connected) << ',' << format_double(r.se)
        << ',' << format_double(r.mean_isolated) << ',' << format_double(r.var_isolated) << ','
        << optional_field(r.exact_expected_isolated) << ','
        << optional_field(r.exact_var_isolated) << ',' << optional_field(r.exact_connected)
        << ',' << format_double(r.nu0) << ',' << optional_field(r.c_star) << ','
        << format_double(r.seconds) << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError("line 1", "expected sweep CSV header");
  }
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    const std::string where = "line " + std::to_string(lineno);
    if (f.size() != 15) throw ParseError(where, "expected 15 fields, got " + std::to_string(f.size()));
    try {
      SweepRow r;
      r.kernel = f[0];
      r.n = std::stoull(f[1]);
      r.c = parse_double(f[2]);
      r.t = parse_double(f[3]);
      r.replicates = std::stoull(f[4]);
      r.frac_connected = parse_double(f[5]);
      r.se = parse_double(f[6]);
      r.mean_isolated = parse_double(f[7]);
      r.var_isolated = parse_double(f[8]);
      r.exact_expected_isolated = parse_optional(f[9]);
      r.exact_var_isolated = parse_optional(f[10]);
      r.exact_connected = parse_optional(f[11]);
      r.nu0 = parse_double(f[12]);
      r.c_star = parse_optional(f[13]);
      r.seconds = parse_double(f[14]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return rows;
}

json to_json(const SweepRow& r) {
  return {{"kernel", r.kernel},
          {"n", r.n},
          {"c", r.c},
          {"t", r.t},
          {"R", r.replicates},
          {"frac_connected", r.frac_connected},
          {"se", r.se},
          {"mean_Y", r.mean_isolated},
          {"var_Y", r.var_isolated},
          {"exact_EY", optional_json(r.exact_expected_isolated)},
          {"exact_VarY", optional_json(r.exact_var_isolated)},
          {"exact_Pconn", optional_json(r.exact_connected)},
          {"nu0", r.nu0},
          {"nu0_method", std::string(to_string(r.nu0_method))},
          {"c_star", optional_json(r.c_star)},
          {"seconds", r.seconds},
          {"largest_component", quantiles_json(r.largest_component)},
          {"smallest_component", quantiles_json(r.smallest_component)},
          {"mean_components", r.mean_components}};
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".json");
}

void emit_report(const std::vector<SweepRow>& rows, const ExperimentConfig& config,
                 const std::filesystem::path& path) {
  if (rows.empty()) throw ArgumentError("emit_report: no rows to write");
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(csv, rows);
  csv.flush();
  if (!csv) throw IoError("failed writing '" + path.string() + "'");

  json meta = {{"toolkit", "pirg"}, {"version", kVersion}, {"config", to_json(config)}};
  meta["rows"] = json::array();
  for (const auto& r : rows) meta["rows"].push_back(to_json(r));
  const auto side = sidecar_path(path);
  std::ofstream js(side, std::ios::binary);
  if (!js) throw IoError("cannot open '" + side.string() + "' for writing");
  js << meta.dump(2) << '\n';
  js.flush();
  if (!js) throw IoError("failed writing '" + side.string() + "'");
}

}  // namespace pirg
