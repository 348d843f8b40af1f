#include "bidlab/brute_force.hpp"

#include <cmath>

#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

struct Walker {
  const TinyInstance& inst;
  std::vector<double> bids;

  double play(int rounds_left, double budget) const {
    if (rounds_left == 0) return 0.0;
    double expected = 0.0;
    for (std::size_t vi = 0; vi < inst.values.size(); ++vi) {
      const double v = inst.values[vi];
      double best = -1e300;
      for (double b : bids) {
        if (b > budget + 1e-12) break;
        double outcome = 0.0;
        for (std::size_t mi = 0; mi < inst.rivals.size(); ++mi) {
          const bool won = b >= inst.rivals[mi];
          const double r = won ? v - b : 0.0;
          const double left = won ? budget - b : budget;
          outcome += inst.rival_probs[mi] * (r + inst.lambda * play(rounds_left - 1, left));
        }
        if (outcome > best) best = outcome;
      }
      expected += inst.value_probs[vi] * best;
    }
    return expected;
  }
};

}  // namespace

double enumerate_policy_value(const TinyInstance& instance) {
  if (instance.values.size() != instance.value_probs.size() || instance.values.empty() ||
      instance.rivals.size() != instance.rival_probs.size() || instance.rivals.empty())
    throw DomainError("tiny instance needs matching nonempty atom lists");
  if (instance.horizon < 0) throw DomainError("horizon must be nonnegative");
  if (!(instance.budget >= 0.0)) throw DomainError("budget must be nonnegative");

  const auto steps = std::lround(1.0 / instance.bid_grid_step);
  if (steps < 1 || std::abs(steps * instance.bid_grid_step - 1.0) > 1e-9)
    throw DomainError("bid grid step must divide 1 evenly");

  Walker w{instance, {}};
  for (long k = 0; k <= steps; ++k) w.bids.push_back(static_cast<double>(k) / static_cast<double>(steps));

  const double branching = static_cast<double>(instance.values.size() * w.bids.size() * instance.rivals.size());
  if (std::pow(branching, instance.horizon) > kMaxEnumeratedHistories)
    throw RefusalError("instance too large to enumerate");

  return w.play(instance.horizon, instance.budget);
}

}  // namespace bidlab
