#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bidlab/auction.hpp"
#include "bidlab/censored_cdf.hpp"
#include "bidlab/cox.hpp"
#include "bidlab/distributions.hpp"
#include "bidlab/dp_solver.hpp"
#include "bidlab/empirical_cdf.hpp"

namespace bidlab {

struct PolicyParams {
  double lambda = 0.9;
  double c1 = 1.0;
  double bid_grid_step = 0.01;
  // Rounds between table rebuilds for the oracle and the full-feedback agent.
  int recompute_every = 1;
  // Full-feedback agent: learn G from observed values instead of knowing it.
  bool estimate_values = true;
  double bandwidth_c = 1.0;
  int feature_dim = 4;
  // Censored agent: rounds covered by one table build within a phase.
  int table_span = 64;

  DpConfig dp() const { return {lambda, c1, bid_grid_step}; }
  void validate() const;
};

// A bidding agent. bid() is called once per round before settlement and
// observe() once after; nothing else about the auction reaches the agent.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual void reset(double budget) = 0;
  virtual double bid(int t, double v) = 0;
  virtual void observe(const Observation& obs) = 0;
  virtual double remaining_budget() const = 0;
};

// Cumulative phase ends 2, 6, 14, 30, ...: phase 1 has 2 rounds and
// phase i has 2^i.
struct PhaseSchedule {
  static long long end(int phase);
  // Phase containing round t >= 1.
  static int phase_of(long long t);
  static bool is_boundary(long long t);
};

inline double half_value_bid(double v) { return v / 2.0; }

// Budget bookkeeping shared by the grid agents: money is held as an integer
// number of grid cells so it never drifts off the grid.
class GridBudget {
 public:
  GridBudget() = default;
  GridBudget(double budget, int units);

  int cells() const { return cells_; }
  double amount() const { return static_cast<double>(cells_) / units_; }
  void spend(double payment);

 private:
  int cells_ = 0;
  int units_ = 1;
};

// Knows F and G; bids optimally against them.
class OraclePolicy : public Policy {
 public:
  OraclePolicy(DistributionSpec rival, DistributionSpec value, PolicyParams params = {});

  std::string name() const override { return "oracle"; }
  void reset(double budget) override;
  double bid(int t, double v) override;
  void observe(const Observation& obs) override;
  double remaining_budget() const override { return budget_.amount(); }

 private:
  PolicyParams params_;
  BidCdf f_;
  ValueAtoms g_;
  GridBudget budget_;
  std::optional<ValueTable> table_;
  int built_at_ = 0;
};

// Learns F from the rival bids revealed every round and re-solves the DP.
class FullFeedbackPolicy : public Policy {
 public:
  // Pass the true value distribution to skip learning G.
  explicit FullFeedbackPolicy(PolicyParams params = {}, std::optional<DistributionSpec> known_value = std::nullopt);

  std::string name() const override { return "full_feedback"; }
  void reset(double budget) override;
  double bid(int t, double v) override;
  void observe(const Observation& obs) override;
  double remaining_budget() const override { return budget_.amount(); }

  const EmpiricalCdf& rival_estimate() const { return f_hat_; }
  const EmpiricalCdf& value_estimate() const { return g_hat_; }

 private:
  PolicyParams params_;
  std::optional<ValueAtoms> known_g_;
  EmpiricalCdf f_hat_;
  EmpiricalCdf g_hat_;
  GridBudget budget_;
  std::optional<ValueTable> table_;
  int built_at_ = 0;
};

// Sees only max(b, m). Collects censored samples, refits F at the end of
// every phase and uses that estimate throughout the next phase.
class CensoredFeedbackPolicy : public Policy {
 public:
  explicit CensoredFeedbackPolicy(PolicyParams params = {});

  std::string name() const override { return "censored_feedback"; }
  void reset(double budget) override;
  double bid(int t, double v) override;
  void observe(const Observation& obs) override;
  double remaining_budget() const override { return budget_.amount(); }

  // Refits both Cox models and the F estimate from every sample so far.
  // Called by observe() at each phase boundary; throws ScheduleError when the
  // last observed round is not a boundary or was already refit.
  void phase_end();

  int estimate_version() const { return version_; }
  const BidCdf& rival_estimate() const { return f_grid_; }
  const std::vector<CensoredSample>& samples() const { return samples_; }
  const std::optional<CensoredCdfEstimate>& censored_estimate() const { return estimate_; }

 private:
  std::vector<double> features() const;

  PolicyParams params_;
  EmpiricalCdf g_hat_;
  GridBudget budget_;
  int initial_cells_ = 0;
  int round_ = 0;
  int last_refit_ = 0;
  int version_ = 0;
  BidCdf f_grid_;
  std::optional<CensoredCdfEstimate> estimate_;
  std::vector<CensoredSample> samples_;
  std::vector<double> pending_features_;
  std::optional<ValueTable> table_;
  int table_version_ = -1;

  double prev_bid_ = 0.0;
  double prev_o_ = 0.0;
  int wins_ = 0;
};

// Bids the grid point nearest half the value, capped at the remaining
// budget.
class HalfValuePolicy : public Policy {
 public:
  explicit HalfValuePolicy(double bid_grid_step = 0.01);

  std::string name() const override { return "half_value"; }
  void reset(double budget) override { budget_ = budget; }
  double bid(int t, double v) override;
  void observe(const Observation& obs) override;
  double remaining_budget() const override { return budget_; }

 private:
  int units_;
  double budget_ = 0.0;
};

enum class PolicyKind { Oracle, FullFeedback, CensoredFeedback, HalfValue };

// Config-level description of one agent.
struct PolicySpec {
  std::string label;
  PolicyKind kind = PolicyKind::FullFeedback;
  PolicyParams params;
};

PolicyKind parse_policy_kind(const std::string& name);
std::string policy_kind_name(PolicyKind kind);
// Feedback channel the agent is designed for.
FeedbackMode feedback_for(PolicyKind kind);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const DistributionSpec& rival,
                                    const DistributionSpec& value);

}  // namespace bidlab
