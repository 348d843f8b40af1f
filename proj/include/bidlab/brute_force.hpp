#pragma once

#include <vector>

namespace bidlab {

// A small, fully discrete bidding problem for exhaustive checking.
struct TinyInstance {
  std::vector<double> values;         // value atoms
  std::vector<double> value_probs;
  std::vector<double> rivals;         // highest-rival-bid atoms
  std::vector<double> rival_probs;
  double bid_grid_step = 0.25;        // bids {0, step, ..., 1}
  int horizon = 1;                    // rounds to play
  double budget = 0.0;
  double lambda = 0.5;
};

// Largest history tree enumerate_policy_value will walk.
inline constexpr double kMaxEnumeratedHistories = 1e7;

// Optimal expected discounted utility sum_k lambda^k r_k over all
// non-anticipating bid rules, found by walking every history of
// (value, bid, rival bid) triples and taking the best bid at each decision
// node. Rival atoms are enumerated one by one and the budget is tracked in
// real arithmetic, so nothing is shared with the grid recursion in
// solve_value_table. Throws RefusalError when the tree exceeds
// kMaxEnumeratedHistories leaves.
double enumerate_policy_value(const TinyInstance& instance);

}  // namespace bidlab
