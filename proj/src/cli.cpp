#include "bidlab/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "bidlab/config.hpp"
#include "bidlab/csv.hpp"
#include "bidlab/errors.hpp"
#include "bidlab/harness.hpp"
#include "bidlab/policies.hpp"

namespace bidlab {

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::string out;
  int threads = 0;
};

std::ofstream open_output(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / file;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

int cmd_run(const Common& common, const std::string& config_path, const std::string& label) {
  ExperimentSpec spec = load_experiment(config_path);
  AuctionConfig cfg = spec.auction;
  if (common.seed) cfg.seed = *common.seed;

  const PolicySpec* chosen = &spec.policies.front();
  if (!label.empty()) {
    chosen = nullptr;
    for (const auto& p : spec.policies)
      if (p.label == label) chosen = &p;
    if (chosen == nullptr) throw ConfigError("no policy labelled '" + label + "'");
  }
  auto policy = make_policy(*chosen, cfg.rival, cfg.value);
  const SimResult result = run_auction(cfg, *policy);

  const std::string dir = resolve_output_dir(common.out, spec.output_dir);
  if (dir.empty()) {
    write_rounds_csv(std::cout, result);
  } else {
    auto os = open_output(dir, "rounds_" + chosen->label + ".csv");
    write_rounds_csv(os, result);
  }
  std::fprintf(stderr, "%s: stop %d, utility %.6f, remaining budget %.6f\n", chosen->label.c_str(), result.stop_time,
               result.total_utility, result.remaining_budget);
  return 0;
}

int cmd_sweep(const Common& common, const std::string& config_path) {
  ExperimentSpec spec = load_experiment(config_path);
  if (common.seed) spec.master_seed = *common.seed;
  if (common.reps) spec.replications = *common.reps;
  spec.validate();

  const SweepResult result = run_sweep(spec);
  std::string dir = resolve_output_dir(common.out, spec.output_dir);
  if (dir.empty()) dir = ".";
  {
    auto os = open_output(dir, "regret.csv");
    write_regret_csv(os, result.samples);
  }
  {
    auto os = open_output(dir, "summary.csv");
    write_summary_csv(os, result.reports);
  }
  for (const auto& r : result.reports) {
    for (const auto& row : r.rows)
      std::fprintf(stderr, "%-20s T=%-6d mean %.4f  se %.4f\n", r.policy.c_str(), row.horizon, row.mean, row.std_error);
    if (r.slope)
      std::fprintf(stderr, "%-20s slope %.3f [%.3f, %.3f]\n", r.policy.c_str(), r.slope->slope, r.slope->lo, r.slope->hi);
  }
  return 0;
}

int cmd_bounds(const Common& common, double lambda, const std::vector<int>& horizons) {
  const std::string dir = resolve_output_dir(common.out, "");
  if (dir.empty()) {
    write_bounds_csv(std::cout, horizons, lambda);
  } else {
    auto os = open_output(dir, "bounds.csv");
    write_bounds_csv(os, horizons, lambda);
  }
  return 0;
}

int cmd_example1(const Common& common, long long samples) {
  const Example1Report r = example1_report(samples, common.seed.value_or(1));
  std::printf("first_best_per_round %.6f\n", r.first_best_per_round);
  std::printf("half_value_per_round %.6f\n", r.half_value_per_round);
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Budget-constrained bidding in repeated first-price auctions"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Master seed");
  app.add_option("--reps", common.reps, "Replications per horizon")->check(CLI::PositiveNumber);
  app.add_option("--out", common.out, "Output directory (overrides " + std::string(kOutDirEnv) + ")");
  app.add_option("--threads", common.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

  std::string config_path, label;
  auto* run = app.add_subcommand("run", "Play one simulation and write the round-level CSV");
  run->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--policy", label, "Policy label from the config (default: first)");

  auto* sweep = app.add_subcommand("sweep", "Regret sweep over horizons and replications");
  sweep->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

  double lambda = 0.9;
  std::vector<int> horizons{512, 1024, 2048, 4096, 8192};
  auto* bounds = app.add_subcommand("bounds", "Write the closed-form regret bound curves");
  bounds->add_option("--lambda", lambda, "Discount factor in (0,1)");
  bounds->add_option("--horizons", horizons, "Horizons")->delimiter(',');

  long long samples = 1000000;
  auto* ex1 = app.add_subcommand("example1", "Monte Carlo of the uniform benchmark instance");
  ex1->add_option("--samples", samples, "Monte Carlo samples (>= 100000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.threads > 0) omp_set_num_threads(common.threads);
    if (*run) return cmd_run(common, config_path, label);
    if (*sweep) return cmd_sweep(common, config_path);
    if (*bounds) return cmd_bounds(common, lambda, horizons);
    if (*ex1) return cmd_example1(common, samples);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "contract violation: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace bidlab
