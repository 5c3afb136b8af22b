#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pirg/analysis.hpp"
#include "pirg/errors.hpp"
#include "pirg/harness.hpp"
#include "pirg/version.hpp"
#include "support/oracles.hpp"

using namespace pirg;
using nlohmann::json;

namespace {

ExperimentConfig config(const std::string& text) { return parse_experiment_config(json::parse(text)); }

std::string csv_of(std::vector<SweepRow> rows) {
  for (auto& r : rows) r.seconds = 0.0;
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::string field_of(const std::string& text) {
  try {
    config(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pirg_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("config parsing defaults and fields") {
  const ExperimentConfig c = config(R"({"kernel":{"kind":"constant","a":1},"n":50,"c":[0.5,1]})");
  CHECK(c.name == "constant");
  CHECK(c.n_values == std::vector<std::size_t>{50});
  CHECK(c.c_values == std::vector<double>{0.5, 1.0});
  CHECK(c.uses_c_grid());
  CHECK(c.replicates == 1);
  CHECK(c.sampler == SamplerKind::Global);

  const ExperimentConfig t = config(
      R"({"name":"er","kernel":{"kind":"constant","a":1},"n":[5,6],"t":[3],"replicates":7,)"
      R"("seed":18446744073709551615,"sampler":"per-pair","threads":3,"exact":false})");
  CHECK(t.name == "er");
  CHECK_FALSE(t.uses_c_grid());
  CHECK(t.seed == 18446744073709551615ull);
  CHECK(t.sampler == SamplerKind::PerPair);
  CHECK(t.threads == 3);
  CHECK_FALSE(t.exact);

  // to_json feeds back through the parser unchanged.
  const ExperimentConfig back = parse_experiment_config(to_json(t));
  CHECK(to_json(back) == to_json(t));

  CHECK(intensity_for(1.0, 100) == 100 * std::log(100.0));
}

TEST_CASE("config errors name the field") {
  CHECK(field_of(R"([1,2])") == "config");
  CHECK(field_of(R"({"n":5,"c":1})") == "kernel");
  CHECK(field_of(R"({"kernel":{"kind":"grid","m":2,"matrix":[[1,2],[3,4]]},"n":5,"c":1})") ==
        "kernel.matrix[0][1]");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"c":1})") == "n");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":1,"c":1})") == "n");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":2.5,"c":1})") == "n");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5})") == "c");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5,"c":1,"t":1})") == "c");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5,"c":-1})") == "c");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5,"c":1,"replicates":0})") ==
        "replicates");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5,"c":1,"sampler":"x"})") == "sampler");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5,"c":1,"seed":-3})") == "seed");
  CHECK(field_of(R"({"kernel":{"kind":"constant","a":1},"n":5,"c":1,"name":"a,b"})") == "name");
}

TEST_CASE("c = 0 gives no connected replicate and all vertices isolated") {
  const auto rows =
      run_sweep(config(R"({"kernel":{"kind":"constant","a":1},"n":40,"c":0,"replicates":20})"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].frac_connected == 0.0);
  CHECK(rows[0].se == 0.0);
  CHECK(rows[0].mean_isolated == 40.0);
  CHECK(rows[0].var_isolated == 0.0);
  CHECK(*rows[0].exact_expected_isolated == 40.0);
  CHECK(rows[0].t == 0.0);
}

TEST_CASE("rows follow config order with one rate table per row") {
  const auto rows = run_sweep(
      config(R"({"kernel":{"kind":"product","coeffs":[[1,1]]},"n":[10,20],"c":[0.5,1,2],)"
             R"("replicates":30,"seed":4})"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].n == 10);
  CHECK(rows[3].n == 20);
  CHECK(rows[4].c == 1.0);
  CHECK(rows[4].t == intensity_for(1.0, 20));
  CHECK(rows[0].nu0 == doctest::Approx(1.5));
  CHECK(*rows[0].c_star == doctest::Approx(2.0 / 3.0));
  CHECK(rows[0].exact_connected.has_value());
  CHECK_FALSE(rows[3].exact_connected.has_value());
  for (const auto& r : rows) {
    CHECK(r.frac_connected >= 0.0);
    CHECK(r.frac_connected <= 1.0);
    CHECK(r.se == doctest::Approx(std::sqrt(r.frac_connected * (1 - r.frac_connected) / 30)));
    CHECK(r.largest_component.max <= static_cast<double>(r.n));
    CHECK(r.largest_component.min >= r.smallest_component.min);
  }

  const auto explicit_t =
      run_sweep(config(R"({"kernel":{"kind":"constant","a":1},"n":10,"t":[23.0],"replicates":5})"));
  CHECK(explicit_t[0].t == 23.0);
  CHECK(explicit_t[0].c == doctest::Approx(23.0 / (10 * std::log(10.0))));
}

TEST_CASE("sweeps are reproducible and independent of thread count") {
  for (const char* sampler : {"global", "per-pair"}) {
    const std::string text =
        std::string(R"({"kernel":{"kind":"block","breakpoints":[0,0.3,1],"matrix":[[3,1],[1,2]]},)") +
        R"("n":[12,60],"c":[0.4,1.2],"replicates":200,"seed":99,"sampler":")" + sampler + "\"}";
    ExperimentConfig cfg = config(text);
    cfg.threads = 1;
    const std::string serial = csv_of(run_sweep(cfg));
    CHECK(serial == csv_of(run_sweep(cfg)));
    cfg.threads = 8;
    CHECK(serial == csv_of(run_sweep(cfg)));
    cfg.seed = 100;
    CHECK(serial != csv_of(run_sweep(cfg)));
  }
}

TEST_CASE("empirical and exact columns agree within four standard errors") {
  Rng gen(21);
  for (int rep = 0; rep < 4; ++rep) {
    ExperimentConfig cfg;
    cfg.kernel = oracle::random_grid_kernel(gen, 3);
    cfg.name = "grid";
    cfg.n_values = {6, 12};
    cfg.t_values = {5.0, 15.0};
    cfg.replicates = 20000;
    cfg.seed = 7 + static_cast<std::uint64_t>(rep);
    for (const auto& row : run_sweep(cfg)) {
      const double p = *row.exact_connected;
      const double se = std::sqrt(p * (1 - p) / static_cast<double>(row.replicates));
      INFO("n=" << row.n << " t=" << row.t);
      CHECK(std::abs(row.frac_connected - p) <= 4 * se + 1e-12);
      CHECK(std::abs(row.mean_isolated - *row.exact_expected_isolated) <=
            4 * std::sqrt(*row.exact_var_isolated / static_cast<double>(row.replicates)) + 1e-12);
    }
  }
}

TEST_CASE("threshold bracketing at n = 1000") {
  for (const char* kernel : {R"({"kind":"constant","a":1})", R"({"kind":"product","coeffs":[[1,1]]})",
                             R"({"kind":"block","breakpoints":[0,0.5,1],"matrix":[[2,1],[1,2]]})"}) {
    ExperimentConfig cfg = parse_experiment_config(
        json{{"kernel", json::parse(kernel)}, {"n", 1000}, {"c", 1}, {"replicates", 100}, {"seed", 5}});
    const Threshold th = threshold(cfg.kernel);
    REQUIRE(th.method == Method::Exact);
    const double below = 0.45 * th.value;
    const double above = 1.55 * th.value;
    cfg.c_values = {below, above};
    const auto rows = run_sweep(cfg);
    INFO(kernel);
    CHECK(rows[0].frac_connected < rows[1].frac_connected);
  }
}

TEST_CASE("capacity errors") {
  ExperimentConfig cfg = config(R"({"kernel":{"kind":"constant","a":1},"n":100000,"c":1})");
  CHECK_THROWS_AS(run_sweep(cfg), CapacityError);
  cfg = config(
      R"({"kernel":{"kind":"constant","a":1},"n":5000,"c":1,"replicates":100000,"sampler":"per-pair"})");
  try {
    run_sweep(cfg);
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("--sampler global") != std::string::npos);
  }
}

TEST_CASE("oracle check examples") {
  OracleCheck c = run_oracle_check(
      config(R"({"kernel":{"kind":"constant","a":1},"n":2,"t":4,"replicates":100000,"seed":3})"));
  CHECK(c.exact == doctest::Approx(1 - std::exp(-1.0)));
  CHECK(std::abs(c.empirical - c.exact) <= 4 * std::sqrt(c.exact * (1 - c.exact) / 1e5));

  Rng gen(22);
  ExperimentConfig g;
  g.kernel = oracle::random_grid_kernel(gen, 4);
  g.n_values = {8};
  g.t_values = {8.0};
  g.replicates = 100000;
  c = run_oracle_check(g);
  CHECK(std::abs(c.z) <= 4.0);

  c = run_oracle_check(config(
      R"({"kernel":{"kind":"block","breakpoints":[0,0.5,1],"matrix":[[1,0],[0,1]]},"n":8,"t":50,"replicates":500})"));
  CHECK(c.empirical == 0.0);
  CHECK(c.exact == 0.0);
  CHECK(c.z == 0.0);

  CHECK_THROWS_AS(run_oracle_check(config(R"({"kernel":{"kind":"constant","a":1},"n":17,"t":4})")),
                  CapacityError);
  CHECK_THROWS_AS(run_oracle_check(config(R"({"kernel":{"kind":"constant","a":1},"n":[4,5],"t":4})")),
                  ArgumentError);
}

TEST_CASE("emit_report writes CSV and sidecar") {
  const ExperimentConfig cfg =
      config(R"({"name":"er","kernel":{"kind":"constant","a":1},"n":[8,30],"c":[0.7,1.3],"replicates":50})");
  const auto rows = run_sweep(cfg);

  CHECK_THROWS_AS(emit_report({}, cfg, scratch("empty.csv")), ArgumentError);
  CHECK_THROWS_AS(emit_report(rows, cfg, scratch("missing") / "dir" / "x.csv"), IoError);

  const auto one = scratch("one.csv");
  emit_report({rows.front()}, cfg, one);
  std::ifstream in1(one);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in1, line)) ++lines;
  CHECK(lines == 2);

  const auto path = scratch("sweep.csv");
  emit_report(rows, cfg, path);
  std::ifstream in(path);
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  in.seekg(0);
  const auto back = read_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    SweepRow expect = rows[k];
    expect.nu0_method = Method::Exact;
    expect.largest_component = {};
    expect.smallest_component = {};
    expect.mean_components = 0.0;
    CHECK(back[k] == expect);
  }
  CHECK_FALSE(back[2].exact_connected.has_value());
  CHECK(back[0].exact_connected.has_value());

  std::ifstream side(sidecar_path(path));
  const json meta = json::parse(side);
  CHECK(meta.at("version") == kVersion);
  CHECK(meta.at("config").at("name") == "er");
  CHECK(meta.at("rows").size() == 4);
  CHECK(meta.at("rows")[0].contains("largest_component"));
}

TEST_CASE("read_csv rejects malformed tables") {
  std::istringstream bad_header("kernel,n\n");
  CHECK_THROWS_AS(read_csv(bad_header), ParseError);
  std::istringstream short_row(std::string(kCsvHeader) + "\ner,5,1\n");
  CHECK_THROWS_AS(read_csv(short_row), ParseError);
}
