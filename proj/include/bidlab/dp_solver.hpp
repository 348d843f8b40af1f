#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bidlab/distributions.hpp"
#include "bidlab/empirical_cdf.hpp"

namespace bidlab {

// Discount, horizon constant and the shared bid/budget grid.
struct DpConfig {
  double lambda = 0.9;
  double c1 = 1.0;
  double bid_grid_step = 0.01;

  // Number of grid steps per unit of money; 1 / bid_grid_step.
  int units() const;
  // Throws ConfigError unless lambda is in [0,1), c1 > 0 and the step
  // divides 1 evenly.
  void validate() const;
};

// Smallest t0 >= t with lambda^(t0 - t) / (1 - lambda) < c1 / sqrt(t).
// Returns t when lambda == 0.
int horizon_t0(int t, double lambda, double c1);

// [(v - b) + lambda V_win] F(b) + lambda V_lose (1 - F(b)).
// Throws InfeasibleBid when b exceeds the budget.
double q_value(double v, double budget, double b, double f_at_b, double v_next_win,
               double v_next_lose, double lambda);

// A CDF tabulated on the bid grid: at[k] = F(k / units).
struct BidCdf {
  std::vector<double> at;

  int units() const { return static_cast<int>(at.size()) - 1; }
  static BidCdf tabulate(int units, const std::function<double(double)>& cdf);
  static BidCdf from(int units, const DistributionSpec& spec);
  static BidCdf from(int units, const EmpiricalCdf& ecdf);
  // F(b) = b, the uniform prior used before any observation.
  static BidCdf identity(int units);
};

// Discrete value distribution with prefix sums for envelope integration.
// Discrete specs and empirical CDFs keep their atoms exactly; continuous
// specs use a midpoint quantile rule.
class ValueAtoms {
 public:
  static constexpr int kQuadraturePoints = 200;

  ValueAtoms(std::vector<double> points, std::vector<double> weights);
  static ValueAtoms from(const DistributionSpec& spec);
  static ValueAtoms from(const EmpiricalCdf& ecdf);

  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  // Sum of w and of w * v over atoms [0, k).
  double weight_before(std::size_t k) const { return cum_w_[k]; }
  double moment_before(std::size_t k) const { return cum_wv_[k]; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  std::vector<double> cum_w_;
  std::vector<double> cum_wv_;
};

// V(budget, tau) for tau in [t, t0], stored per time slice.
//
// When the base row is constant, a budget of at least (t0 - tau) money units
// can never bind before t0, so every such budget shares the value at that
// cap; slices store cells only up to the cap and lookups clamp to it. A
// reachable-only solve further drops cells below the lowest budget that can
// be reached from budget_max by tau.
class ValueTable {
 public:
  struct Slice {
    int lo = 0;
    int hi = 0;
    std::vector<double> value;  // cells lo..hi
  };

  ValueTable(int t, int t0, int units, double lambda, std::vector<Slice> slices, bool capped,
             std::vector<double> base_row);

  int t() const { return t_; }
  int t0() const { return t0_; }
  int units() const { return units_; }
  double lambda() const { return lambda_; }
  bool capped() const { return capped_; }

  // V at integer budget cell and time tau. Times past t0 read the base row.
  double value(int budget_cell, int tau) const;
  double value_at_budget(double budget, int tau) const;
  const Slice& slice(int tau) const { return slices_.at(static_cast<std::size_t>(tau - t_)); }

 private:
  int t_;
  int t0_;
  int units_;
  double lambda_;
  bool capped_;
  std::vector<Slice> slices_;
  std::vector<double> base_row_;
};

struct SolveOptions {
  // Defaults to horizon_t0(t, lambda, c1).
  std::optional<int> t0;
  // Base row V(., t0) per budget cell 0..budget_max; defaults to all zeros.
  std::optional<std::vector<double>> base_row;
  // Only solve cells reachable from budget_max starting at time t.
  bool reachable_only = false;
};

// Backward recursion from the base row at t0 down to t. Each cell holds
// E_v max_{b <= min(B, 1)} Q_v(B, tau, b) over the value atoms, computed
// exactly from the upper envelope of the lines v -> Q_v(b). Cells of one
// slice are independent and run in parallel.
ValueTable solve_value_table(const BidCdf& f_hat, const ValueAtoms& g_hat, int t, double budget_max,
                             const DpConfig& cfg, const SolveOptions& options = {});

// Argmax over grid bids b <= min(budget, 1) of Q_v(budget, t, b) using the
// table's values at t + 1. Ties resolve to the smallest bid.
double optimal_bid(const ValueTable& table, double v, double budget, int t, const BidCdf& f_hat,
                   const DpConfig& cfg);

// Budget in grid cells, rounded to the nearest cell.
int budget_cell(double budget, int units);

namespace detail {

// E_v max_k (slope[k] v + intercept[k]) over the atoms. Slopes must be
// nondecreasing in k.
double expected_upper_envelope(std::span<const double> slope, std::span<const double> intercept,
                               const ValueAtoms& atoms);

}  // namespace detail

}  // namespace bidlab
