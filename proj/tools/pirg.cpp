// pirg: sample, sweep, and analyze Poissonian inhomogeneous random multigraphs.
//
//   pirg sample --config exp.json [--seed S] [--sampler global|per-pair] [--out graph.txt]
//   pirg sweep  --config exp.json --out sweep.csv [--seed S] [--sampler ...] [--threads K]
//   pirg exact  --config exp.json [--out stats.json]
//   pirg stats  --config kernel.json [--out stats.json]
//
// Exit codes: 0 success, 1 runtime failure, 2 configuration error,
// 3 capacity error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pirg/analysis.hpp"
#include "pirg/edge_list.hpp"
#include "pirg/errors.hpp"
#include "pirg/harness.hpp"
#include "pirg/kernel_json.hpp"
#include "pirg/rate_table.hpp"
#include "pirg/sampler.hpp"
#include "pirg/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sampler;
  std::optional<unsigned> threads;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pirg::ParseError("config", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw pirg::ParseError("config", std::string("invalid JSON: ") + e.what());
  }
}

pirg::ExperimentConfig load_experiment(const Options& opt) {
  pirg::ExperimentConfig cfg = pirg::parse_experiment_config(load_json(opt.config));
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.sampler) {
    try {
      cfg.sampler = pirg::sampler_from_string(*opt.sampler);
    } catch (const pirg::ArgumentError& e) {
      throw pirg::ParseError("--sampler", e.what());
    }
  }
  if (opt.threads) {
    if (*opt.threads == 0) throw pirg::ParseError("--threads", "must be at least 1");
    cfg.threads = *opt.threads;
  }
  return cfg;
}

void require_single(const pirg::ExperimentConfig& cfg) {
  const std::size_t values = cfg.uses_c_grid() ? cfg.c_values.size() : cfg.t_values.size();
  if (cfg.n_values.size() != 1) throw pirg::ParseError("n", "expected a single vertex count");
  if (values != 1) {
    throw pirg::ParseError(cfg.uses_c_grid() ? "c" : "t", "expected a single value");
  }
}

double single_t(const pirg::ExperimentConfig& cfg) {
  return cfg.uses_c_grid() ? pirg::intensity_for(cfg.c_values.front(), cfg.n_values.front())
                           : cfg.t_values.front();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pirg::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw pirg::IoError("failed writing '" + path + "'");
}

json degree_summary(std::vector<double> d) {
  std::sort(d.begin(), d.end());
  auto at = [&](double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(d.size())));
    return d[std::clamp<std::size_t>(k, 1, d.size()) - 1];
  };
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(d.size());
  return {{"min", d.front()}, {"q25", at(0.25)}, {"median", at(0.5)},
          {"q75", at(0.75)},  {"max", d.back()},  {"mean", mean}};
}

json isolation_json(const pirg::RateTable& rates) {
  const pirg::IsolationStats s = pirg::isolation_stats(rates);
  return {{"n", rates.n()},
          {"t", rates.t()},
          {"E_Y", s.expected},
          {"Var_Y", s.variance},
          {"ratio", s.expected > 0.0 ? json(s.concentration_ratio()) : json(nullptr)},
          {"degrees", degree_summary(s.expected_degree)},
          {"expected_edges", pirg::expected_edge_count(rates)},
          {"clamp_events", s.clamp_events}};
}

int cmd_sample(const Options& opt) {
  const pirg::ExperimentConfig cfg = load_experiment(opt);
  require_single(cfg);
  const pirg::RateTable rates =
      pirg::build_rate_table(cfg.kernel, single_t(cfg), cfg.n_values.front());
  pirg::Rng rng = pirg::SeedSpec{cfg.seed, 0, static_cast<std::uint64_t>(pirg::Purpose::Sample)}
                      .stream();
  const pirg::MultiGraph g = cfg.sampler == pirg::SamplerKind::Global
                                 ? pirg::sample_global(rates, rng)
                                 : pirg::sample_per_pair(rates, rng);
  std::ostringstream text;
  pirg::write_edge_list(text, g, rates.t(), cfg.seed);
  write_output(opt.out, text.str());
  return 0;
}

int cmd_sweep(const Options& opt) {
  const pirg::ExperimentConfig cfg = load_experiment(opt);
  const auto rows = pirg::run_sweep(cfg, &std::cerr);
  if (opt.out.empty() || opt.out == "-") {
    pirg::write_csv(std::cout, rows);
  } else {
    pirg::emit_report(rows, cfg, opt.out);
    std::cerr << "[sweep] wrote " << opt.out << " and " << pirg::sidecar_path(opt.out).string()
              << "\n";
  }
  return 0;
}

int cmd_exact(const Options& opt) {
  const json doc = load_json(opt.config);
  std::optional<pirg::RateTable> rates;
  if (doc.is_object() && doc.contains("rates")) {
    // {"n": 3, "t": 9, "rates": [packed upper triangle]}
    try {
      rates.emplace(doc.at("n").get<std::size_t>(), doc.value("t", 0.0),
                    doc.at("rates").get<std::vector<double>>());
    } catch (const json::exception& e) {
      throw pirg::ParseError("rates", e.what());
    } catch (const pirg::ArgumentError& e) {
      throw pirg::ParseError("rates", e.what());
    }
  } else {
    const pirg::ExperimentConfig cfg = pirg::parse_experiment_config(doc);
    require_single(cfg);
    rates.emplace(pirg::build_rate_table(cfg.kernel, single_t(cfg), cfg.n_values.front()));
  }
  json out = isolation_json(*rates);
  out["P_connected"] = pirg::exact_connectivity_prob(*rates);
  const pirg::IsolationStats s = pirg::isolation_stats(*rates);
  out["isolation_prob"] = s.isolation_prob;
  out["expected_degree"] = s.expected_degree;
  write_output(opt.out, out.dump(2) + "\n");
  return 0;
}

int cmd_stats(const Options& opt) {
  const json doc = load_json(opt.config);
  if (!doc.is_object()) throw pirg::ParseError("config", "expected a JSON object");
  // Either a bare kernel document or an experiment config with a "kernel".
  const bool bare = doc.contains("kind");
  const pirg::Kernel w = bare ? pirg::kernel_from_json(doc, "kernel")
                              : pirg::kernel_from_json(doc.value("kernel", json()), "kernel");
  std::vector<double> qs{2.0, 3.0, 4.0};
  if (doc.contains("q")) {
    try {
      qs = doc.at("q").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw pirg::ParseError("q", "expected an array of exponents > 1");
    }
  }
  json out;
  if (!bare && doc.contains("n")) {
    const pirg::ExperimentConfig cfg = pirg::parse_experiment_config(doc);
    require_single(cfg);
    out = isolation_json(pirg::build_rate_table(w, single_t(cfg), cfg.n_values.front()));
  }
  const pirg::Nu0 nu = pirg::nu0(w);
  out["kernel"] = pirg::kernel_to_json(w);
  out["nu0"] = nu.value;
  out["nu0_method"] = std::string(pirg::to_string(nu.method));
  out["threshold"] = nu.value > 0.0 ? json(1.0 / nu.value) : json(nullptr);
  json norms = json::object();
  for (double q : qs) {
    try {
      norms[pirg::format_double(q)] = pirg::lq_norm(w, q);
    } catch (const pirg::ArgumentError& e) {
      throw pirg::ParseError("q", e.what());
    }
  }
  out["lq_norms"] = norms;
  const pirg::Irreducibility irr = pirg::is_irreducible(w);
  out["irreducible"] = irr.irreducible;
  out["irreducible_method"] = std::string(pirg::to_string(irr.method));
  write_output(opt.out, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poissonian inhomogeneous random multigraphs: sampling, sweeps, exact analysis"};
  app.set_version_flag("--version", pirg::kVersion);
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Configuration JSON")->required();
    sub->add_option("--out", opt.out, "Output path (stdout when omitted)");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "Master seed (overrides the config)");
    sub->add_option("--sampler", opt.sampler, "per-pair | global (overrides the config)");
  };

  auto* sample = app.add_subcommand("sample", "Draw one multigraph as an edge list");
  add_common(sample);
  add_sampling(sample);
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo connectivity sweep to CSV + JSON");
  add_common(sweep);
  add_sampling(sweep);
  sweep->add_option("--threads", opt.threads, "Worker threads (overrides the config)");
  auto* exact = app.add_subcommand("exact", "Exact connectivity and isolation statistics");
  add_common(exact);
  auto* stats = app.add_subcommand("stats", "Kernel summary: nu0, threshold, L_q norms");
  add_common(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sample) return cmd_sample(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*exact) return cmd_exact(opt);
    if (*stats) return cmd_stats(opt);
  } catch (const pirg::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const pirg::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pirg::ArgumentError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pirg::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pirg::IndexError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
