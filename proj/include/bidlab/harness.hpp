#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bidlab/auction.hpp"
#include "bidlab/distributions.hpp"
#include "bidlab/policies.hpp"

namespace bidlab {

// R(v, b) = (v - b) F(b): expected utility of bid b with the rival bid
// integrated out.
double expected_reward(double v, double b, const DistributionSpec& f);

struct BudgetRule {
  enum class Kind { Fixed, Proportional };
  Kind kind = Kind::Proportional;
  double amount = 0.5;  // fixed budget, or beta in B = beta * T

  // Budget for horizon T, rounded down to the bid grid.
  double budget_for(int horizon, double grid_step) const;
};

struct ExperimentSpec {
  AuctionConfig auction;  // horizon, budget and seed are filled per task
  std::vector<int> horizons{512, 1024, 2048, 4096, 8192};
  BudgetRule budget;
  std::vector<PolicySpec> policies;
  PolicyParams oracle;  // parameters of the benchmark agent
  int replications = 1;
  std::uint64_t master_seed = 0;
  std::string output_dir;

  void validate() const;
};

struct RegretSample {
  int horizon = 0;
  std::string policy;
  int rep = 0;
  double regret = 0.0;
};

struct HorizonSummary {
  int horizon = 0;
  int reps = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> thm1;
  std::optional<double> thm2;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double lo = 0.0;  // 95% interval for the slope
  double hi = 0.0;
  std::size_t points_used = 0;
  std::vector<std::string> warnings;
};

struct RegretReport {
  std::string policy;
  std::vector<HorizonSummary> rows;
  std::optional<SlopeFit> slope;  // present with at least three usable horizons
};

struct SweepResult {
  std::vector<RegretSample> samples;  // ordered by (horizon, rep, policy)
  std::vector<RegretReport> reports;  // one per policy, in config order
};

// Sum over t = 1..T of R(v_t, b*_t) - R(v_t, b_t) under the true F. Rounds
// after a run's own stop time contribute nothing for that run.
double regret_between(const SimResult& benchmark, const SimResult& run, const DistributionSpec& f);

// Every (horizon, replication) pair is one task: the oracle and each policy
// play the same draws (seed = master ^ rep), each with its own budget.
// Tasks run in parallel; results land in fixed slots, so the output does
// not depend on the thread count.
SweepResult run_sweep(const ExperimentSpec& spec);

// Sweep restricted to one policy with the given replication count.
RegretReport measure_regret(const ExperimentSpec& spec, const PolicySpec& policy, int reps);

// Mean, standard error and bound curves per horizon.
RegretReport summarize(const std::string& policy, const std::vector<RegretSample>& samples, double lambda);

// Least squares of ln(regret) on ln(T) with a Student-t 95% interval.
// Non-positive regrets are dropped with a warning; throws DomainError when
// fewer than three points remain.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

// Closed-form regret bounds for the full-feedback agent with known G and
// with G estimated. Throws DomainError unless T >= 2 and 0 < lambda < 1.
double thm1_bound(double horizon, double lambda);
double thm2_bound(double horizon, double lambda);

struct Example1Report {
  double first_best_per_round = 0.0;
  double half_value_per_round = 0.0;
  double first_best_payment = 0.0;
  double half_value_payment = 0.0;
};

// Monte Carlo over V ~ U(0.4, 1), M ~ U(0, 0.5): E[(V - M)+] and
// E[1{V/2 >= M} V/2], plus the matching per-round payments.
// Needs at least 1e5 samples.
Example1Report example1_report(long long samples, std::uint64_t seed);

}  // namespace bidlab
