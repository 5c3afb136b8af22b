#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "pirg/edge_list.hpp"
#include "pirg/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path dir() {
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "pirg_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return d;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the CLI with stdout captured to `out`; returns the exit code.
int run(const std::string& args, const fs::path& out = dir() / "stdout.txt") {
  const std::string cmd = std::string(PIRG_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + (dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kEr = R"({"name":"er","kernel":{"kind":"constant","a":1},"n":3,"t":9,"replicates":50,"seed":1})";

}  // namespace

TEST_CASE("sample writes a parseable edge list") {
  const auto cfg = write("sample.json", kEr);
  const auto out = dir() / "g.txt";
  REQUIRE(run("sample --config " + cfg.string() + " --out " + out.string() + " --seed 8") == 0);
  std::ifstream in(out);
  const pirg::EdgeListDocument doc = pirg::read_edge_list(in);
  CHECK(doc.graph.n() == 3);
  CHECK(doc.t == 9.0);
  CHECK(doc.seed == 8);
  // Same seed, same graph; both samplers accepted.
  REQUIRE(run("sample --config " + cfg.string() + " --seed 8", dir() / "g2.txt") == 0);
  CHECK(slurp(out) == slurp(dir() / "g2.txt"));
  CHECK(run("sample --config " + cfg.string() + " --sampler per-pair") == 0);
}

TEST_CASE("sweep writes CSV and sidecar") {
  const auto cfg = write("sweep.json", kEr);
  const auto out = dir() / "sweep.csv";
  REQUIRE(run("sweep --config " + cfg.string() + " --out " + out.string() + " --threads 2") == 0);
  std::ifstream in(out);
  const auto rows = pirg::read_csv(in);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].kernel == "er");
  CHECK(rows[0].replicates == 50);
  CHECK(*rows[0].exact_connected == doctest::Approx(0.6935682870258898));
  const json side = json::parse(slurp(pirg::sidecar_path(out)));
  CHECK(side.at("config").at("seed") == 1);

  // stdout mode
  REQUIRE(run("sweep --config " + cfg.string(), dir() / "stdout.csv") == 0);
  CHECK(slurp(dir() / "stdout.csv").rfind(pirg::kCsvHeader, 0) == 0);
}

TEST_CASE("exact reports connectivity and isolation moments") {
  const auto cfg = write("exact.json", kEr);
  const auto out = dir() / "exact.json.out";
  REQUIRE(run("exact --config " + cfg.string() + " --out " + out.string()) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("P_connected").get<double>() == doctest::Approx(0.6935682870258898));
  CHECK(j.at("E_Y").get<double>() == doctest::Approx(3 * std::exp(-2.0)));
  CHECK(j.at("Var_Y").get<double>() == doctest::Approx(0.5398875099184142));

  const auto raw = write("rates.json", R"({"n":2,"t":4,"rates":[1,1,1]})");
  REQUIRE(run("exact --config " + raw.string() + " --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("P_connected").get<double>() ==
        doctest::Approx(1 - std::exp(-1.0)));

  const auto big = write("big.json", R"({"kernel":{"kind":"constant","a":1},"n":20,"t":9})");
  CHECK(run("exact --config " + big.string()) == 3);
}

TEST_CASE("stats summarizes a kernel") {
  const auto k = write("kernel.json", R"({"kind":"product","coeffs":[[1,1]]})");
  const auto out = dir() / "stats.out";
  REQUIRE(run("stats --config " + k.string() + " --out " + out.string()) == 0);
  json j = json::parse(slurp(out));
  CHECK(j.at("nu0").get<double>() == doctest::Approx(1.5));
  CHECK(j.at("nu0_method") == "exact");
  CHECK(j.at("threshold").get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(j.at("irreducible") == true);
  CHECK(j.at("lq_norms").at("2").get<double>() == doctest::Approx(7.0 / 3.0));

  const auto cfg = write("stats_cfg.json",
                         R"({"kernel":{"kind":"constant","a":1},"n":100,"c":0.5,"q":[3]})");
  REQUIRE(run("stats --config " + cfg.string() + " --out " + out.string()) == 0);
  j = json::parse(slurp(out));
  CHECK(j.at("n") == 100);
  CHECK(j.contains("E_Y"));
  CHECK(j.contains("ratio"));
  CHECK(j.at("degrees").contains("median"));
  CHECK(j.at("lq_norms").size() == 1);

  const auto reducible =
      write("red.json", R"({"kind":"block","breakpoints":[0,0.5,1],"matrix":[[1,0],[0,0]]})");
  REQUIRE(run("stats --config " + reducible.string() + " --out " + out.string()) == 0);
  j = json::parse(slurp(out));
  CHECK(j.at("threshold").is_null());
  CHECK(j.at("irreducible") == false);
}

TEST_CASE("exit codes") {
  CHECK(run("") == 2);
  CHECK(run("sweep") == 2);
  CHECK(run("sweep --config " + (dir() / "nope.json").string()) == 2);
  const auto bad = write("bad.json", R"({"kernel":{"kind":"grid","m":2,"matrix":[[1,2],[3,1]]},"n":5,"c":1})");
  CHECK(run("sweep --config " + bad.string()) == 2);
  CHECK(slurp(dir() / "stderr.txt").find("kernel.matrix[0][1]") != std::string::npos);
  const auto cfg = write("ok.json", kEr);
  CHECK(run("sweep --config " + cfg.string() + " --sampler turbo") == 2);
  CHECK(run("sweep --config " + cfg.string() + " --threads 0") == 2);
  const auto huge = write("huge.json", R"({"kernel":{"kind":"constant","a":1},"n":200000,"c":1})");
  CHECK(run("sweep --config " + huge.string()) == 3);
  CHECK(run("--version") == 0);
}
