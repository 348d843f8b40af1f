// Serial reference kernels against the optimized OpenMP ones.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "bidlab/censored_cdf.hpp"
#include "bidlab/dp_solver.hpp"
#include "bidlab/harness.hpp"
#include "bidlab/reference.hpp"
#include "bidlab/rng.hpp"

namespace {

using namespace bidlab;

struct DpInputs {
  DpConfig cfg{0.9, 1.0, 0.01};
  BidCdf f = BidCdf::from(100, DistributionSpec::uniform(0.0, 0.5));
  ValueAtoms g = ValueAtoms::from(DistributionSpec::uniform(0.4, 1.0));
  SolveOptions opt;
  DpInputs() {
    opt.t0 = 120;
    // A sloped base row disables budget capping so every cell is solved.
    std::vector<double> base(201);
    for (std::size_t c = 0; c < base.size(); ++c) base[c] = 0.001 * static_cast<double>(c);
    opt.base_row = base;
  }
};

void BM_ValueTableReference(benchmark::State& state) {
  DpInputs in;
  for (auto _ : state) benchmark::DoNotOptimize(reference::solve_value_table(in.f, in.g, 100, 2.0, in.cfg, in.opt));
}
BENCHMARK(BM_ValueTableReference)->Unit(benchmark::kMillisecond);

void BM_ValueTableEnvelope(benchmark::State& state) {
  DpInputs in;
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_value_table(in.f, in.g, 100, 2.0, in.cfg, in.opt));
}
BENCHMARK(BM_ValueTableEnvelope)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

std::vector<CensoredSample> censored_data(std::size_t n) {
  RngStream rng(7, 0);
  std::vector<CensoredSample> out(n);
  for (auto& s : out) {
    const double m = 0.5 * rng.uniform();
    const double b = 0.6 * rng.uniform();
    s.event = b < m;
    s.y = s.event ? 1.0 - m : 1.0 - b;
    s.features = {rng.uniform(), rng.uniform()};
  }
  return out;
}

CoxFit fixed_fit(double a, double b) {
  CoxFit f;
  f.coefficients = {a, b};
  f.converged = true;
  return f;
}

void BM_ZengReference(benchmark::State& state) {
  const auto data = censored_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::zeng_estimate(data, fixed_fit(0.3, -0.2), fixed_fit(0.1, 0.4), KernelSpec{}));
}
BENCHMARK(BM_ZengReference)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ZengBlocked(benchmark::State& state) {
  const auto data = censored_data(static_cast<std::size_t>(state.range(0)));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(zeng_estimate(data, fixed_fit(0.3, -0.2), fixed_fit(0.1, 0.4), KernelSpec{}));
}
BENCHMARK(BM_ZengBlocked)->Args({128, 1})->Args({2048, 1})->Args({2048, 4})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  ExperimentSpec spec;
  spec.auction.rival = DistributionSpec::uniform(0.0, 0.5);
  spec.auction.value = DistributionSpec::uniform(0.4, 1.0);
  spec.horizons = {128, 256};
  spec.replications = 4;
  PolicySpec p;
  p.label = "full_feedback";
  p.kind = PolicyKind::FullFeedback;
  spec.policies = {p};
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
