#include "bidlab/policies.hpp"

#include <algorithm>
#include <cmath>

#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

const ValueAtoms& uniform_prior_atoms() {
  static const ValueAtoms atoms = ValueAtoms::from(DistributionSpec::uniform(0.0, 1.0));
  return atoms;
}

// Last round a table built at t must cover when it is rebuilt every `every` rounds.
int window_t0(int t, int every, const PolicyParams& p) { return horizon_t0(t + every - 1, p.lambda, p.c1); }

}  // namespace

void PolicyParams::validate() const {
  dp().validate();
  if (recompute_every < 1) throw ConfigError("recompute_every must be >= 1");
  if (!(bandwidth_c > 0.0)) throw ConfigError("bandwidth constant must be positive");
  if (feature_dim < 1) throw ConfigError("feature dimension must be >= 1");
  if (table_span < 1) throw ConfigError("table span must be >= 1");
}

long long PhaseSchedule::end(int phase) {
  if (phase < 1 || phase > 61) throw DomainError("phase index out of range");
  return (1LL << (phase + 1)) - 2;
}

int PhaseSchedule::phase_of(long long t) {
  if (t < 1) throw DomainError("rounds start at 1");
  int i = 1;
  while (end(i) < t) ++i;
  return i;
}

bool PhaseSchedule::is_boundary(long long t) { return t >= 1 && end(phase_of(t)) == t; }

GridBudget::GridBudget(double budget, int units) : cells_(budget_cell(budget, units)), units_(units) {
  if (!(budget >= 0.0)) throw DomainError("budget must be nonnegative");
  if (std::abs(static_cast<double>(cells_) / units - budget) > 1e-9) throw DomainError("budget is not on the bid grid");
}

void GridBudget::spend(double payment) {
  const int paid = budget_cell(payment, units_);
  if (std::abs(static_cast<double>(paid) / units_ - payment) > 1e-9) throw ContractViolation("payment off the bid grid");
  if (paid > cells_) throw ContractViolation("payment exceeds remaining budget");
  cells_ -= paid;
}

// ---- oracle -----------------------------------------------------------------

OraclePolicy::OraclePolicy(DistributionSpec rival, DistributionSpec value, PolicyParams params)
    : params_(params), f_(BidCdf::from(params.dp().units(), rival)), g_(ValueAtoms::from(value)) {
  params_.validate();
}

void OraclePolicy::reset(double budget) {
  budget_ = GridBudget(budget, params_.dp().units());
  table_.reset();
  built_at_ = 0;
}

double OraclePolicy::bid(int t, double v) {
  if (budget_.cells() == 0) return 0.0;
  const DpConfig cfg = params_.dp();
  if (!table_ || t >= built_at_ + params_.recompute_every || t < table_->t() || t > table_->t0()) {
    SolveOptions opt;
    opt.t0 = window_t0(t, params_.recompute_every, params_);
    opt.reachable_only = true;
    table_ = solve_value_table(f_, g_, t, budget_.amount(), cfg, opt);
    built_at_ = t;
  }
  return optimal_bid(*table_, v, budget_.amount(), t, f_, cfg);
}

void OraclePolicy::observe(const Observation& obs) { budget_.spend(obs.payment); }

// ---- full feedback ------------------------------------------------------------

FullFeedbackPolicy::FullFeedbackPolicy(PolicyParams params, std::optional<DistributionSpec> known_value)
    : params_(params) {
  params_.validate();
  if (known_value) known_g_ = ValueAtoms::from(*known_value);
}

void FullFeedbackPolicy::reset(double budget) {
  budget_ = GridBudget(budget, params_.dp().units());
  f_hat_ = {};
  g_hat_ = {};
  table_.reset();
  built_at_ = 0;
}

double FullFeedbackPolicy::bid(int t, double v) {
  if (budget_.cells() == 0) return 0.0;
  const DpConfig cfg = params_.dp();
  const int units = cfg.units();
  const BidCdf f = f_hat_.empty() ? BidCdf::identity(units) : BidCdf::from(units, f_hat_);
  if (!table_ || t >= built_at_ + params_.recompute_every || t < table_->t() || t > table_->t0()) {
    SolveOptions opt;
    opt.t0 = window_t0(t, params_.recompute_every, params_);
    opt.reachable_only = true;
    if (known_g_) {
      table_ = solve_value_table(f, *known_g_, t, budget_.amount(), cfg, opt);
    } else if (g_hat_.empty()) {
      table_ = solve_value_table(f, uniform_prior_atoms(), t, budget_.amount(), cfg, opt);
    } else {
      table_ = solve_value_table(f, ValueAtoms::from(g_hat_), t, budget_.amount(), cfg, opt);
    }
    built_at_ = t;
  }
  return optimal_bid(*table_, v, budget_.amount(), t, f, cfg);
}

void FullFeedbackPolicy::observe(const Observation& obs) {
  if (obs.mode != FeedbackMode::Full || !obs.payload.rival)
    throw ModeError("full-feedback agent needs the rival bid every round");
  f_hat_.insert(*obs.payload.rival);
  if (!known_g_) g_hat_.insert(obs.value);
  budget_.spend(obs.payment);
}

// ---- censored feedback -------------------------------------------------------

CensoredFeedbackPolicy::CensoredFeedbackPolicy(PolicyParams params)
    : params_(params), f_grid_(BidCdf::identity(params.dp().units())) {
  params_.validate();
}

void CensoredFeedbackPolicy::reset(double budget) {
  budget_ = GridBudget(budget, params_.dp().units());
  initial_cells_ = budget_.cells();
  g_hat_ = {};
  round_ = 0;
  last_refit_ = 0;
  version_ = 0;
  f_grid_ = BidCdf::identity(params_.dp().units());
  estimate_.reset();
  samples_.clear();
  pending_features_.clear();
  table_.reset();
  table_version_ = -1;
  prev_bid_ = prev_o_ = 0.0;
  wins_ = 0;
}

std::vector<double> CensoredFeedbackPolicy::features() const {
  std::vector<double> h(static_cast<std::size_t>(params_.feature_dim), 0.0);
  const std::size_t seen = samples_.size();
  if (seen == 0) return h;
  const double raw[4] = {prev_bid_, prev_o_,
                         initial_cells_ > 0 ? static_cast<double>(budget_.cells()) / initial_cells_ : 0.0,
                         static_cast<double>(wins_) / static_cast<double>(seen)};
  for (std::size_t k = 0; k < h.size() && k < 4; ++k) h[k] = raw[k];
  return h;
}

double CensoredFeedbackPolicy::bid(int t, double v) {
  if (t != round_ + 1) throw ScheduleError("rounds must be bid in order");
  pending_features_ = features();
  g_hat_.insert(v);
  if (budget_.cells() == 0) return 0.0;

  const DpConfig cfg = params_.dp();
  if (!table_ || table_version_ != version_ || t > table_->t0() ||
      horizon_t0(t, params_.lambda, params_.c1) > table_->t0()) {
    const long long phase_end = PhaseSchedule::end(PhaseSchedule::phase_of(t));
    const int last = static_cast<int>(std::min<long long>(phase_end, static_cast<long long>(t) + params_.table_span - 1));
    SolveOptions opt;
    opt.t0 = horizon_t0(last, params_.lambda, params_.c1);
    opt.reachable_only = true;
    table_ = solve_value_table(f_grid_, ValueAtoms::from(g_hat_), t, budget_.amount(), cfg, opt);
    table_version_ = version_;
  }
  return optimal_bid(*table_, v, budget_.amount(), t, f_grid_, cfg);
}

void CensoredFeedbackPolicy::observe(const Observation& obs) {
  if (obs.t != round_ + 1 || pending_features_.empty()) throw ScheduleError("observe must follow bid for the same round");
  CensoredSample s;
  if (obs.won) {
    s.y = 1.0 - obs.bid;
    s.event = false;
  } else {
    s.y = 1.0 - obs.payload.highest;
    s.event = true;
  }
  s.features = std::move(pending_features_);
  pending_features_.clear();
  samples_.push_back(std::move(s));

  budget_.spend(obs.payment);
  prev_bid_ = obs.bid;
  prev_o_ = obs.payload.highest;
  if (obs.won) ++wins_;
  round_ = obs.t;

  if (PhaseSchedule::is_boundary(round_)) phase_end();
}

void CensoredFeedbackPolicy::phase_end() {
  if (round_ < 1 || !PhaseSchedule::is_boundary(round_) || last_refit_ == round_)
    throw ScheduleError("phase end requested off a phase boundary");
  last_refit_ = round_;

  const auto dim = static_cast<std::size_t>(params_.feature_dim);
  CoxFit beta = cox_fit(samples_, CoxTarget::Event);
  CoxFit gamma = cox_fit(samples_, CoxTarget::Censor);
  if (!beta.converged) beta.coefficients.assign(dim, 0.0);
  if (!gamma.converged) gamma.coefficients.assign(dim, 0.0);

  estimate_ = zeng_estimate(samples_, beta, gamma, KernelSpec{KernelKind::Gaussian, params_.bandwidth_c});
  // Without a single lost round the estimate carries no information about
  // F; keep the previous one.
  if (!estimate_->low_confidence) {
    const CensoredCdfEstimate& est = *estimate_;
    f_grid_ = BidCdf::tabulate(params_.dp().units(), [&](double b) { return censored_cdf_eval(est, b); });
  }
  ++version_;
}

// ---- half value ----------------------------------------------------------------

HalfValuePolicy::HalfValuePolicy(double bid_grid_step) : units_(DpConfig{0.0, 1.0, bid_grid_step}.units()) {
  DpConfig{0.0, 1.0, bid_grid_step}.validate();
}

double HalfValuePolicy::bid(int, double v) {
  const double snapped = std::round(half_value_bid(v) * units_) / units_;
  return std::min(snapped, budget_);
}

void HalfValuePolicy::observe(const Observation& obs) { budget_ = std::max(0.0, budget_ - obs.payment); }

// ---- factory -------------------------------------------------------------------

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "oracle") return PolicyKind::Oracle;
  if (name == "full_feedback") return PolicyKind::FullFeedback;
  if (name == "censored_feedback") return PolicyKind::CensoredFeedback;
  if (name == "half_value") return PolicyKind::HalfValue;
  throw ConfigError("unknown policy kind '" + name + "'");
}

std::string policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Oracle: return "oracle";
    case PolicyKind::FullFeedback: return "full_feedback";
    case PolicyKind::CensoredFeedback: return "censored_feedback";
    case PolicyKind::HalfValue: return "half_value";
  }
  return "unknown";
}

FeedbackMode feedback_for(PolicyKind kind) {
  return kind == PolicyKind::CensoredFeedback ? FeedbackMode::Censored : FeedbackMode::Full;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const DistributionSpec& rival,
                                    const DistributionSpec& value) {
  switch (spec.kind) {
    case PolicyKind::Oracle: return std::make_unique<OraclePolicy>(rival, value, spec.params);
    case PolicyKind::FullFeedback:
      return std::make_unique<FullFeedbackPolicy>(
          spec.params, spec.params.estimate_values ? std::nullopt : std::optional<DistributionSpec>(value));
    case PolicyKind::CensoredFeedback: return std::make_unique<CensoredFeedbackPolicy>(spec.params);
    case PolicyKind::HalfValue: return std::make_unique<HalfValuePolicy>(spec.params.bid_grid_step);
  }
  throw ConfigError("unknown policy kind");
}

}  // namespace bidlab
