#include "bidlab/dp_solver.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

int DpConfig::units() const { return static_cast<int>(std::lround(1.0 / bid_grid_step)); }

void DpConfig::validate() const {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in [0,1)");
  if (!(c1 > 0.0)) throw ConfigError("c1 must be positive");
  if (!(bid_grid_step > 0.0 && bid_grid_step <= 1.0)) throw ConfigError("bid grid step must lie in (0,1]");
  if (std::abs(units() * bid_grid_step - 1.0) > 1e-9)
    throw ConfigError("bid grid step must divide 1 evenly");
}

int horizon_t0(int t, double lambda, double c1) {
  if (t < 1) throw DomainError("horizon_t0 needs t >= 1");
  if (lambda == 0.0) return t;
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("horizon_t0 needs lambda in [0,1)");
  if (!(c1 > 0.0)) throw DomainError("horizon_t0 needs c1 > 0");
  const double target = c1 / std::sqrt(static_cast<double>(t));
  double tail = 1.0 / (1.0 - lambda);
  int k = 0;
  while (!(tail < target)) {
    tail *= lambda;
    ++k;
  }
  return t + k;
}

double q_value(double v, double budget, double b, double f_at_b, double v_next_win,
               double v_next_lose, double lambda) {
  if (b > budget + 1e-12) throw InfeasibleBid("bid exceeds remaining budget");
  return ((v - b) + lambda * v_next_win) * f_at_b + lambda * v_next_lose * (1.0 - f_at_b);
}

int budget_cell(double budget, int units) {
  return static_cast<int>(std::llround(budget * units));
}

BidCdf BidCdf::tabulate(int units, const std::function<double(double)>& cdf) {
  BidCdf out;
  out.at.resize(static_cast<std::size_t>(units) + 1);
  for (int k = 0; k <= units; ++k) out.at[static_cast<std::size_t>(k)] = cdf(static_cast<double>(k) / units);
  return out;
}

BidCdf BidCdf::from(int units, const DistributionSpec& spec) {
  return tabulate(units, [&](double b) { return spec.cdf(b); });
}

BidCdf BidCdf::from(int units, const EmpiricalCdf& ecdf) {
  return tabulate(units, [&](double b) { return ecdf(b); });
}

BidCdf BidCdf::identity(int units) {
  return tabulate(units, [](double b) { return b; });
}

ValueAtoms::ValueAtoms(std::vector<double> points, std::vector<double> weights) {
  if (points.empty() || points.size() != weights.size())
    throw DomainError("value atoms need matching, nonempty points and weights");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i] < points[i - 1]) throw DomainError("value atoms must be sorted");
    if (!points_.empty() && points_.back() == points[i]) {
      weights_.back() += weights[i];
      continue;
    }
    points_.push_back(points[i]);
    weights_.push_back(weights[i]);
  }
  cum_w_.assign(points_.size() + 1, 0.0);
  cum_wv_.assign(points_.size() + 1, 0.0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    cum_w_[i + 1] = cum_w_[i] + weights_[i];
    cum_wv_[i + 1] = cum_wv_[i] + weights_[i] * points_[i];
  }
}

ValueAtoms ValueAtoms::from(const DistributionSpec& spec) {
  if (const auto* a = std::get_if<DiscreteAtoms>(&spec.variant())) return ValueAtoms(a->points, a->masses);
  if (const auto* e = std::get_if<EmpiricalStep>(&spec.variant())) {
    const double w = 1.0 / static_cast<double>(e->sorted.size());
    return ValueAtoms(e->sorted, std::vector<double>(e->sorted.size(), w));
  }
  std::vector<double> pts(kQuadraturePoints);
  for (int k = 0; k < kQuadraturePoints; ++k)
    pts[static_cast<std::size_t>(k)] = spec.quantile((k + 0.5) / kQuadraturePoints);
  return ValueAtoms(std::move(pts), std::vector<double>(kQuadraturePoints, 1.0 / kQuadraturePoints));
}

ValueAtoms ValueAtoms::from(const EmpiricalCdf& ecdf) {
  if (ecdf.empty()) throw DomainError("value atoms from an empty empirical CDF");
  auto s = ecdf.sorted();
  const double w = 1.0 / static_cast<double>(s.size());
  return ValueAtoms({s.begin(), s.end()}, std::vector<double>(s.size(), w));
}

ValueTable::ValueTable(int t, int t0, int units, double lambda, std::vector<Slice> slices, bool capped,
                       std::vector<double> base_row)
    : t_(t), t0_(t0), units_(units), lambda_(lambda), capped_(capped), slices_(std::move(slices)),
      base_row_(std::move(base_row)) {}

double ValueTable::value(int budget_cell, int tau) const {
  if (tau < t_) throw std::out_of_range("time before the table start");
  if (budget_cell < 0) throw std::out_of_range("negative budget cell");
  if (tau > t0_) return base_row_[std::min<std::size_t>(static_cast<std::size_t>(budget_cell), base_row_.size() - 1)];
  const Slice& s = slices_[static_cast<std::size_t>(tau - t_)];
  int c = budget_cell;
  if (capped_) c = static_cast<int>(std::min<long long>(c, static_cast<long long>(t0_ - tau) * units_));
  if (c < s.lo || c > s.hi)
    throw std::out_of_range("budget cell " + std::to_string(budget_cell) + " outside solved band at tau " +
                            std::to_string(tau));
  return s.value[static_cast<std::size_t>(c - s.lo)];
}

double ValueTable::value_at_budget(double budget, int tau) const {
  return value(budget_cell(budget, units_), tau);
}

namespace detail {

double expected_upper_envelope(std::span<const double> slope, std::span<const double> intercept,
                               const ValueAtoms& atoms) {
  thread_local std::vector<double> hs, hc;
  hs.clear();
  hc.clear();
  for (std::size_t k = 0; k < slope.size(); ++k) {
    const double s = slope[k];
    const double c = intercept[k];
    if (!hs.empty() && s == hs.back()) {
      if (c <= hc.back()) continue;
      hs.pop_back();
      hc.pop_back();
    }
    while (hs.size() >= 2) {
      const std::size_t m = hs.size();
      const double s1 = hs[m - 2], c1 = hc[m - 2], s2 = hs[m - 1], c2 = hc[m - 1];
      if ((c1 - c) * (s2 - s1) <= (c1 - c2) * (s - s1)) {
        hs.pop_back();
        hc.pop_back();
      } else {
        break;
      }
    }
    hs.push_back(s);
    hc.push_back(c);
  }

  const auto pts = atoms.points();
  double total = 0.0;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    std::size_t end = pts.size();
    if (k + 1 < hs.size()) {
      const double x = (hc[k] - hc[k + 1]) / (hs[k + 1] - hs[k]);
      end = static_cast<std::size_t>(std::lower_bound(pts.begin() + static_cast<std::ptrdiff_t>(begin), pts.end(), x) -
                                     pts.begin());
    }
    if (end > begin) {
      total += hs[k] * (atoms.moment_before(end) - atoms.moment_before(begin)) +
               hc[k] * (atoms.weight_before(end) - atoms.weight_before(begin));
    }
    begin = end;
  }
  return total;
}

}  // namespace detail

ValueTable solve_value_table(const BidCdf& f_hat, const ValueAtoms& g_hat, int t, double budget_max,
                             const DpConfig& cfg, const SolveOptions& options) {
  cfg.validate();
  const int units = cfg.units();
  if (f_hat.units() != units) throw DomainError("CDF grid does not match the bid grid");
  if (t < 1) throw DomainError("solve_value_table needs t >= 1");
  if (!(budget_max >= 0.0)) throw DomainError("budget must be nonnegative");
  const int top = budget_cell(budget_max, units);
  if (std::abs(static_cast<double>(top) / units - budget_max) > 1e-9)
    throw DomainError("budget is not on the grid");
  const int t0 = options.t0.value_or(horizon_t0(t, cfg.lambda, cfg.c1));
  if (t0 < t) throw DomainError("t0 must be >= t");

  std::vector<double> base = options.base_row.value_or(std::vector<double>(static_cast<std::size_t>(top) + 1, 0.0));
  if (base.size() != static_cast<std::size_t>(top) + 1) throw DomainError("base row must cover budgets 0..budget_max");
  const bool capped = std::all_of(base.begin(), base.end(), [&](double x) { return x == base.front(); });
  if (capped) base.resize(1);

  const double lambda = cfg.lambda;
  const auto slices_n = static_cast<std::size_t>(t0 - t) + 1;
  std::vector<ValueTable::Slice> slices(slices_n);

  auto band = [&](int tau) {
    long long cap = capped ? static_cast<long long>(t0 - tau) * units : LLONG_MAX;
    const int hi = static_cast<int>(std::min<long long>(top, cap));
    int lo = 0;
    if (options.reachable_only)
      lo = static_cast<int>(std::clamp<long long>(static_cast<long long>(top) - static_cast<long long>(tau - t) * units, 0, hi));
    return std::pair{lo, hi};
  };

  {
    auto [lo, hi] = band(t0);
    auto& s = slices.back();
    s.lo = lo;
    s.hi = hi;
    s.value.resize(static_cast<std::size_t>(hi - lo) + 1);
    for (int c = lo; c <= hi; ++c)
      s.value[static_cast<std::size_t>(c - lo)] = base[std::min<std::size_t>(static_cast<std::size_t>(c), base.size() - 1)];
  }

  for (int tau = t0 - 1; tau >= t; --tau) {
    const auto& next = slices[static_cast<std::size_t>(tau + 1 - t)];
    const long long next_cap = capped ? static_cast<long long>(t0 - tau - 1) * units : LLONG_MAX;
    auto next_value = [&](int c) {
      const int cc = static_cast<int>(std::min<long long>(c, next_cap));
      return next.value[static_cast<std::size_t>(cc - next.lo)];
    };

    auto [lo, hi] = band(tau);
    auto& s = slices[static_cast<std::size_t>(tau - t)];
    s.lo = lo;
    s.hi = hi;
    s.value.assign(static_cast<std::size_t>(hi - lo) + 1, 0.0);
    const int cells = hi - lo + 1;

#pragma omp parallel if (cells > 64)
    {
      std::vector<double> intercept(static_cast<std::size_t>(units) + 1);
#pragma omp for schedule(static)
      for (int c = lo; c <= hi; ++c) {
        const int max_bid = std::min(c, units);
        const double stay = next_value(c);
        for (int k = 0; k <= max_bid; ++k) {
          const double f = f_hat.at[static_cast<std::size_t>(k)];
          const double b = static_cast<double>(k) / units;
          intercept[static_cast<std::size_t>(k)] =
              -b * f + lambda * (f * next_value(c - k) + (1.0 - f) * stay);
        }
        const auto n = static_cast<std::size_t>(max_bid) + 1;
        s.value[static_cast<std::size_t>(c - lo)] = detail::expected_upper_envelope(
            std::span<const double>(f_hat.at).first(n), std::span<const double>(intercept).first(n), g_hat);
      }
    }
  }

  return ValueTable(t, t0, units, lambda, std::move(slices), capped, std::move(base));
}

double optimal_bid(const ValueTable& table, double v, double budget, int t, const BidCdf& f_hat,
                   const DpConfig& cfg) {
  const int units = cfg.units();
  if (table.units() != units || f_hat.units() != units) throw DomainError("grid mismatch");
  if (!(budget >= 0.0)) throw DomainError("budget must be nonnegative");
  if (t < table.t() || t > table.t0()) throw std::out_of_range("round outside the table's window");
  if (v <= 0.0) return 0.0;

  const int cell = budget_cell(budget, units);
  const double on_grid = static_cast<double>(cell) / units;
  const int max_bid = std::min(cell, units);
  const double stay = table.value(cell, t + 1);
  int best_k = 0;
  double best = -1e300;
  for (int k = 0; k <= max_bid; ++k) {
    const double b = static_cast<double>(k) / units;
    const double q = q_value(v, on_grid, b, f_hat.at[static_cast<std::size_t>(k)], table.value(cell - k, t + 1),
                             stay, cfg.lambda);
    if (q > best + kTieTolerance * std::max(1.0, std::abs(best))) {
      best = q;
      best_k = k;
    }
  }
  return static_cast<double>(best_k) / units;
}

}  // namespace bidlab
