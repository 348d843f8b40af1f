#include "bidlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "bidlab/errors.hpp"
#include "bidlab/rng.hpp"

namespace bidlab {

double expected_reward(double v, double b, const DistributionSpec& f) { return (v - b) * f.cdf(b); }

double BudgetRule::budget_for(int horizon, double grid_step) const {
  const double raw = kind == Kind::Fixed ? amount : amount * horizon;
  const double units = std::round(1.0 / grid_step);
  return std::floor(raw * units + 1e-9) / units;
}

void ExperimentSpec::validate() const {
  if (horizons.empty()) throw ConfigError("sweep needs at least one horizon");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1) throw ConfigError("horizons must be positive");
    if (i > 0 && horizons[i] <= horizons[i - 1]) throw ConfigError("horizons must be strictly increasing");
  }
  if (replications < 1) throw ConfigError("replication count must be >= 1");
  if (!(budget.amount > 0.0)) throw ConfigError("budget rule needs a positive amount");
  if (policies.empty()) throw ConfigError("sweep needs at least one policy");
  for (const auto& p : policies) {
    if (p.label.empty()) throw ConfigError("policy label must not be empty");
    p.params.validate();
  }
  for (std::size_t i = 0; i < policies.size(); ++i)
    for (std::size_t j = i + 1; j < policies.size(); ++j)
      if (policies[i].label == policies[j].label) throw ConfigError("duplicate policy label '" + policies[i].label + "'");
  oracle.validate();
  AuctionConfig probe = auction;
  probe.horizon = horizons.front();
  probe.budget = budget.budget_for(horizons.front(), auction.bid_grid_step);
  probe.validate();
}

double regret_between(const SimResult& benchmark, const SimResult& run, const DistributionSpec& f) {
  // Round by round, so identical runs give exactly zero.
  const std::size_t n = std::max(benchmark.rounds.size(), run.rounds.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < benchmark.rounds.size() ? expected_reward(benchmark.rounds[i].v, benchmark.rounds[i].b, f) : 0.0;
    const double b = i < run.rounds.size() ? expected_reward(run.rounds[i].v, run.rounds[i].b, f) : 0.0;
    total += a - b;
  }
  return total;
}

namespace {

PolicyParams oracle_params(const ExperimentSpec& spec) {
  PolicyParams p = spec.oracle;
  p.lambda = spec.auction.lambda;
  p.bid_grid_step = spec.auction.bid_grid_step;
  return p;
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t n_h = spec.horizons.size();
  const auto n_r = static_cast<std::size_t>(spec.replications);
  const std::size_t n_p = spec.policies.size();
  const std::size_t tasks = n_h * n_r;

  std::vector<double> regrets(tasks * n_p, 0.0);
  std::vector<std::exception_ptr> errors(tasks);
  const PolicyParams oparams = oracle_params(spec);

  // Longest horizons first keeps the dynamic schedule balanced.
#pragma omp parallel for schedule(dynamic, 1)
  for (long long idx = 0; idx < static_cast<long long>(tasks); ++idx) {
    const std::size_t task = tasks - 1 - static_cast<std::size_t>(idx);
    const std::size_t h = task / n_r;
    const std::size_t rep = task % n_r;
    try {
      AuctionConfig cfg = spec.auction;
      cfg.horizon = spec.horizons[h];
      cfg.budget = spec.budget.budget_for(cfg.horizon, cfg.bid_grid_step);
      cfg.seed = replication_seed(spec.master_seed, rep);

      RngStream value_rng(cfg.seed, kValueStream);
      RngStream rival_rng(cfg.seed, kRivalStream);
      std::vector<double> values(static_cast<std::size_t>(cfg.horizon)), rivals(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = cfg.value.sample(value_rng);
        rivals[i] = cfg.rival.sample(rival_rng);
      }

      OraclePolicy oracle(cfg.rival, cfg.value, oparams);
      AuctionConfig ocfg = cfg;
      ocfg.feedback = FeedbackMode::Full;
      const SimResult bench = run_auction(ocfg, oracle, values, rivals);

      for (std::size_t p = 0; p < n_p; ++p) {
        const PolicySpec& ps = spec.policies[p];
        auto agent = make_policy(ps, cfg.rival, cfg.value);
        AuctionConfig pcfg = cfg;
        pcfg.feedback = feedback_for(ps.kind);
        const SimResult run = run_auction(pcfg, *agent, values, rivals);
        regrets[task * n_p + p] = regret_between(bench, run, cfg.rival);
      }
    } catch (...) {
      errors[task] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepResult out;
  out.samples.reserve(tasks * n_p);
  for (std::size_t task = 0; task < tasks; ++task)
    for (std::size_t p = 0; p < n_p; ++p)
      out.samples.push_back({spec.horizons[task / n_r], spec.policies[p].label, static_cast<int>(task % n_r),
                             regrets[task * n_p + p]});
  for (const auto& ps : spec.policies) out.reports.push_back(summarize(ps.label, out.samples, spec.auction.lambda));
  return out;
}

RegretReport measure_regret(const ExperimentSpec& spec, const PolicySpec& policy, int reps) {
  ExperimentSpec one = spec;
  one.policies = {policy};
  one.replications = reps;
  return run_sweep(one).reports.front();
}

RegretReport summarize(const std::string& policy, const std::vector<RegretSample>& samples, double lambda) {
  RegretReport report;
  report.policy = policy;
  std::vector<int> horizons;
  for (const auto& s : samples)
    if (s.policy == policy && std::find(horizons.begin(), horizons.end(), s.horizon) == horizons.end())
      horizons.push_back(s.horizon);
  std::sort(horizons.begin(), horizons.end());

  for (int h : horizons) {
    std::vector<double> xs;
    for (const auto& s : samples)
      if (s.policy == policy && s.horizon == h) xs.push_back(s.regret);
    HorizonSummary row;
    row.horizon = h;
    row.reps = static_cast<int>(xs.size());
    row.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
      double ss = 0.0;
      for (double x : xs) ss += (x - row.mean) * (x - row.mean);
      row.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    }
    if (lambda > 0.0 && lambda < 1.0 && h >= 2) {
      row.thm1 = thm1_bound(h, lambda);
      row.thm2 = thm2_bound(h, lambda);
    }
    report.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& r : report.rows) pts.emplace_back(r.horizon, r.mean);
  if (pts.size() >= 3) {
    try {
      report.slope = fit_slope(pts);
    } catch (const DomainError&) {
      // Too few positive means to fit; leave the slope absent.
    }
  }
  return report;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  SlopeFit fit;
  std::vector<double> x, y;
  for (const auto& [t, r] : points) {
    if (!(t > 0.0)) throw DomainError("horizon must be positive");
    if (!(r > 0.0)) {
      fit.warnings.push_back("dropped non-positive regret at T=" + std::to_string(t));
      continue;
    }
    x.push_back(std::log(t));
    y.push_back(std::log(r));
  }
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("slope fit needs at least three positive points");

  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("slope fit needs distinct horizons");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    sse += e * e;
  }
  const double df = static_cast<double>(n - 2);
  const double se = std::sqrt(sse / df / sxx);
  const double q = boost::math::quantile(boost::math::students_t(df), 0.975);
  fit.lo = fit.slope - q * se;
  fit.hi = fit.slope + q * se;
  fit.points_used = n;
  return fit;
}

namespace {

void check_bound_args(double horizon, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("bound needs lambda in (0,1)");
  if (!(horizon >= 2.0)) throw DomainError("bound needs T >= 2");
}

double log_term(double horizon, double lambda) {
  const double one_minus = 1.0 - lambda;
  return lambda / 2.0 * std::log(horizon / (one_minus * one_minus)) / std::log(1.0 / lambda) + 1.0;
}

}  // namespace

double thm1_bound(double horizon, double lambda) {
  check_bound_args(horizon, lambda);
  const double om = 1.0 - lambda;
  const double lead = 4.0 * std::sqrt(0.5 * std::log(2.0 * horizon * horizon)) * (1.0 + lambda) / (om * om);
  return (lead + 5.0 - lambda) * std::sqrt(horizon) + log_term(horizon, lambda);
}

double thm2_bound(double horizon, double lambda) {
  check_bound_args(horizon, lambda);
  const double om = 1.0 - lambda;
  const double lead = std::sqrt(0.5 * std::log(4.0 * horizon * horizon)) * 6.0 * (1.0 + lambda) / (om * om);
  return (lead + 5.0 - lambda) * std::sqrt(horizon) + log_term(horizon, lambda);
}

Example1Report example1_report(long long samples, std::uint64_t seed) {
  if (samples < 100000) throw DomainError("example report needs at least 1e5 samples");
  RngStream vr(seed, kValueStream);
  RngStream mr(seed, kRivalStream);
  double fb = 0.0, hv = 0.0, fb_pay = 0.0, hv_pay = 0.0;
  for (long long i = 0; i < samples; ++i) {
    const double v = 0.4 + 0.6 * vr.uniform();
    const double m = 0.5 * mr.uniform();
    if (v >= m) {
      fb += v - m;
      fb_pay += m;
    }
    if (v / 2.0 >= m) {
      hv += v / 2.0;
      hv_pay += v / 2.0;
    }
  }
  const auto n = static_cast<double>(samples);
  return {fb / n, hv / n, fb_pay / n, hv_pay / n};
}

}  // namespace bidlab
