#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bidlab/cli.hpp"
#include "bidlab/config.hpp"
#include "bidlab/errors.hpp"

using namespace bidlab;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"({
  "auction": {
    "rival": {"type": "uniform", "params": [0.0, 0.5]},
    "value": {"type": "uniform", "params": [0.4, 1.0]},
    "lambda": 0.9,
    "bid_grid_step": 0.01,
    "horizon": 60,
    "budget": 20,
    "feedback": "full",
    "seed": 3
  },
  "policies": [
    {"label": "alg1", "kind": "full_feedback", "recompute_every": 4},
    {"kind": "half_value"}
  ],
  "sweep": {
    "horizons": [16, 32, 64],
    "budget": {"rule": "proportional", "beta": 0.5},
    "replications": 2,
    "seed": 11
  }
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bidlab_test_" + std::to_string(std::rand()) + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bidlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse a full config") {
  const auto spec = parse_experiment(kConfig);
  CHECK(spec.auction.lambda == 0.9);
  CHECK(spec.auction.horizon == 60);
  CHECK(spec.auction.seed == 3);
  CHECK(spec.auction.rival.cdf(0.25) == doctest::Approx(0.5));
  REQUIRE(spec.policies.size() == 2);
  CHECK(spec.policies[0].label == "alg1");
  CHECK(spec.policies[0].params.recompute_every == 4);
  CHECK(spec.policies[0].params.lambda == 0.9);
  CHECK(spec.policies[1].label == "half_value");
  CHECK(spec.horizons == std::vector<int>{16, 32, 64});
  CHECK(spec.replications == 2);
  CHECK(spec.master_seed == 11);
  CHECK(spec.budget.kind == BudgetRule::Kind::Proportional);
  CHECK(spec.oracle.lambda == 0.9);
}

TEST_CASE("config errors") {
  const std::string base = kConfig;
  CHECK_THROWS_AS(parse_experiment("{"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"seed\": 3", "\"seed\": 3, \"colour\": 1")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"lambda\": 0.9", "\"lambda\": 1.0")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"lambda\": 0.9", "\"lambda\": \"high\"")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"full\"", "\"partial\"")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"half_value\"", "\"greedy\"")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "[0.0, 0.5]", "[0.5, 0.0]")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "[16, 32, 64]", "[64, 32]")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"beta\": 0.5", "\"amount\": 3")), ConfigError);
  CHECK_THROWS_AS(parse_experiment(replace(base, "\"recompute_every\": 4", "\"recompute_every\": 0")), ConfigError);
  CHECK_THROWS_AS(load_experiment("/nonexistent/bidlab.json"), ConfigError);
}

TEST_CASE("distribution json round trip") {
  for (const auto& d : {DistributionSpec::uniform(0.1, 0.7), DistributionSpec::atoms({0.0, 0.3, 0.9}, {0.2, 0.5, 0.3}),
                        DistributionSpec::piecewise_linear({{0.0, 0.0}, {0.4, 0.8}, {1.0, 1.0}})}) {
    const auto back = parse_distribution(distribution_to_json(d));
    CHECK(back.tag() == d.tag());
    CHECK(back.params() == d.params());
    for (double x = 0.0; x <= 1.0; x += 0.05) CHECK(back.cdf(x) == d.cdf(x));
  }
  CHECK_THROWS_AS(parse_distribution(R"({"type": "cauchy", "params": [0, 1]})"), ConfigError);
  CHECK_THROWS_AS(parse_distribution(R"({"type": "uniform"})"), ConfigError);
}

TEST_CASE("output directory precedence") {
  ::unsetenv(kOutDirEnv);
  CHECK(resolve_output_dir("", "cfg") == "cfg");
  ::setenv(kOutDirEnv, "env", 1);
  CHECK(resolve_output_dir("", "cfg") == "env");
  CHECK(resolve_output_dir("flag", "cfg") == "flag");
  ::unsetenv(kOutDirEnv);
  CHECK(resolve_output_dir("flag", "") == "flag");
  CHECK(resolve_output_dir("", "") == "");
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  const std::string good = dir.write("good.json", kConfig);
  const std::string bad = dir.write("bad.json", replace(kConfig, "\"lambda\": 0.9", "\"lambda\": 2"));
  CHECK(cli({"example1", "--samples", "100000"}) == 0);
  CHECK(cli({"bounds", "--lambda", "0.5", "--horizons", "100,1000", "--out", dir.path.string()}) == 0);
  CHECK(slurp(dir.path / "bounds.csv").rfind("T,lambda,thm1_bound,thm2_bound\n100,0.5,", 0) == 0);
  CHECK(cli({"sweep", bad}) == 2);
  CHECK(cli({"sweep", (dir.path / "missing.json").string()}) == 2);
  CHECK(cli({"frobnicate"}) == 2);
  CHECK(cli({"run", good, "--policy", "nobody", "--out", dir.path.string()}) == 2);
  CHECK(cli({"bounds", "--lambda", "1.5", "--out", dir.path.string()}) == 1);
  CHECK(cli({"--help"}) == 0);
}

TEST_CASE("cli run and sweep write their files") {
  TempDir dir;
  const std::string good = dir.write("good.json", kConfig);
  const auto out = (dir.path / "out").string();
  REQUIRE(cli({"run", good, "--policy", "alg1", "--out", out}) == 0);
  const std::string rounds = slurp(fs::path(out) / "rounds_alg1.csv");
  CHECK(rounds.rfind("t,v,b,m,won,r,c,o,remaining_budget\n", 0) == 0);

  REQUIRE(cli({"sweep", good, "--reps", "3", "--seed", "5", "--out", out}) == 0);
  const std::string regret = slurp(fs::path(out) / "regret.csv");
  int lines = 0;
  for (char c : regret) lines += c == '\n';
  CHECK(lines == 1 + 3 * 3 * 2);
  const std::string summary = slurp(fs::path(out) / "summary.csv");
  CHECK(summary.rfind("policy,T,reps,mean_regret,std_error,thm1_bound,thm2_bound,slope,slope_lo,slope_hi\n", 0) == 0);

  // Same flags, same bytes; the environment only matters without --out.
  const auto out2 = (dir.path / "out2").string();
  ::setenv(kOutDirEnv, out2.c_str(), 1);
  REQUIRE(cli({"sweep", good, "--reps", "3", "--seed", "5", "--threads", "2"}) == 0);
  ::unsetenv(kOutDirEnv);
  CHECK(slurp(fs::path(out2) / "regret.csv") == regret);
  CHECK(slurp(fs::path(out2) / "summary.csv") == summary);
}

TEST_CASE("shipped config parses") {
  const auto spec = load_experiment(std::string(BIDLAB_SOURCE_DIR) + "/configs/example1.json");
  CHECK(spec.policies.size() == 3);
  CHECK(spec.replications == 50);
}
