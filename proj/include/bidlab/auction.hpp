#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bidlab/distributions.hpp"

namespace bidlab {

class Policy;

enum class FeedbackMode { Full, Censored };

struct Settlement {
  bool won = false;
  double utility = 0.0;  // may be negative when the bid exceeds the value
  double payment = 0.0;
};

// First-price settlement; ties go to the buyer.
Settlement settle_round(double v, double b, double m);

// What the mechanism reveals after a round. In censored mode only the
// highest bid max(b, m) is published, so a winner learns just m <= b.
struct ObservationPayload {
  double highest = 0.0;
  std::optional<double> rival;
};

ObservationPayload make_observation(FeedbackMode mode, double b, double m);

// Everything a policy sees about round t once it has been settled.
struct Observation {
  int t = 0;
  double value = 0.0;
  double bid = 0.0;
  bool won = false;
  double utility = 0.0;
  double payment = 0.0;
  FeedbackMode mode = FeedbackMode::Full;
  ObservationPayload payload;
};

struct AuctionConfig {
  int horizon = 1;
  double budget = 1.0;
  DistributionSpec rival = DistributionSpec::uniform(0.0, 1.0);  // F
  DistributionSpec value = DistributionSpec::uniform(0.0, 1.0);  // G
  FeedbackMode feedback = FeedbackMode::Full;
  double lambda = 0.9;
  std::uint64_t seed = 0;
  // Smallest positive bid; once the budget drops below it and F has no
  // atom at zero the buyer can no longer win anything.
  double bid_grid_step = 0.01;

  void validate() const;
};

struct RoundRecord {
  int t = 0;
  double v = 0.0;
  double b = 0.0;
  double m = 0.0;
  bool won = false;
  double r = 0.0;
  double c = 0.0;
  double o = 0.0;
  double remaining_budget = 0.0;
};

struct SimResult {
  std::vector<RoundRecord> rounds;  // rounds 1 .. stop_time - 1
  int stop_time = 1;
  double total_utility = 0.0;
  double discounted_utility = 0.0;
  double remaining_budget = 0.0;
};

// Stream ids used to derive the per-round draws from the config seed.
inline constexpr std::uint32_t kValueStream = 0;
inline constexpr std::uint32_t kRivalStream = 1;

// Plays rounds 1..T. Values and rival bids come from inverse transforms of
// two uniform streams, one draw per round each, so every policy run on the
// same seed faces the same (v_t, m_t). Throws ContractViolation when the
// policy bids outside [0,1] or above its remaining budget.
SimResult run_auction(const AuctionConfig& config, Policy& policy);

// Same loop with explicit per-round draws (size >= horizon each).
SimResult run_auction(const AuctionConfig& config, Policy& policy, std::span<const double> values,
                      std::span<const double> rivals);

}  // namespace bidlab
