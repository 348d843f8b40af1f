#include "bidlab/auction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bidlab/errors.hpp"
#include "bidlab/policies.hpp"
#include "bidlab/rng.hpp"

namespace bidlab {

Settlement settle_round(double v, double b, double m) {
  Settlement s;
  s.won = b >= m;
  if (s.won) {
    s.utility = v - b;
    s.payment = b;
  }
  return s;
}

ObservationPayload make_observation(FeedbackMode mode, double b, double m) {
  ObservationPayload p;
  p.highest = std::max(b, m);
  if (mode == FeedbackMode::Full) p.rival = m;
  return p;
}

void AuctionConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ConfigError("budget must be positive");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in [0,1)");
  if (!(bid_grid_step > 0.0 && bid_grid_step <= 1.0)) throw ConfigError("bid grid step must lie in (0,1]");
}

namespace {

// Any emitted bid may be off by rounding noise from grid arithmetic.
constexpr double kBidSlack = 1e-9;

}  // namespace

SimResult run_auction(const AuctionConfig& config, Policy& policy, std::span<const double> values,
                      std::span<const double> rivals) {
  config.validate();
  const auto horizon = static_cast<std::size_t>(config.horizon);
  if (values.size() < horizon || rivals.size() < horizon) throw DomainError("not enough draws for the horizon");

  policy.reset(config.budget);
  const bool zero_never_wins = config.rival.atomless_at_zero();

  SimResult out;
  out.rounds.reserve(horizon);
  double budget = config.budget;
  double discount = 1.0;
  int t = 1;
  for (; t <= config.horizon; ++t) {
    // Stop once nothing can be won any more.
    if (budget <= 1e-12) break;
    if (zero_never_wins && budget < config.bid_grid_step - 1e-12) break;

    const double v = values[static_cast<std::size_t>(t - 1)];
    const double m = rivals[static_cast<std::size_t>(t - 1)];
    double b = policy.bid(t, v);
    if (!std::isfinite(b) || b < 0.0 || b > 1.0 + kBidSlack)
      throw ContractViolation(policy.name() + " bid " + std::to_string(b) + " outside [0,1] in round " +
                              std::to_string(t));
    if (b > budget + kBidSlack)
      throw ContractViolation(policy.name() + " bid " + std::to_string(b) + " above remaining budget " +
                              std::to_string(budget) + " in round " + std::to_string(t));
    b = std::clamp(b, 0.0, std::min(budget, 1.0));

    const Settlement s = settle_round(v, b, m);
    budget = std::max(0.0, budget - s.payment);

    RoundRecord rec;
    rec.t = t;
    rec.v = v;
    rec.b = b;
    rec.m = m;
    rec.won = s.won;
    rec.r = s.utility;
    rec.c = s.payment;
    rec.o = std::max(b, m);
    rec.remaining_budget = budget;
    out.rounds.push_back(rec);
    out.total_utility += s.utility;
    out.discounted_utility += discount * s.utility;
    discount *= config.lambda;

    Observation obs;
    obs.t = t;
    obs.value = v;
    obs.bid = b;
    obs.won = s.won;
    obs.utility = s.utility;
    obs.payment = s.payment;
    obs.mode = config.feedback;
    obs.payload = make_observation(config.feedback, b, m);
    policy.observe(obs);
  }
  out.stop_time = t;
  out.remaining_budget = budget;
  return out;
}

SimResult run_auction(const AuctionConfig& config, Policy& policy) {
  config.validate();
  RngStream value_rng(config.seed, kValueStream);
  RngStream rival_rng(config.seed, kRivalStream);
  const auto horizon = static_cast<std::size_t>(config.horizon);
  std::vector<double> values(horizon), rivals(horizon);
  for (std::size_t i = 0; i < horizon; ++i) {
    values[i] = config.value.sample(value_rng);
    rivals[i] = config.rival.sample(rival_rng);
  }
  return run_auction(config, policy, values, rivals);
}

}  // namespace bidlab
