#include "bidlab/reference.hpp"

#include <algorithm>
#include <cmath>

#include "bidlab/empirical_cdf.hpp"
#include "bidlab/errors.hpp"

namespace bidlab::reference {

DenseValueTable solve_value_table(const BidCdf& f_hat, const ValueAtoms& g_hat, int t, double budget_max,
                                  const DpConfig& cfg, const SolveOptions& options) {
  cfg.validate();
  const int units = cfg.units();
  const int top = budget_cell(budget_max, units);
  const int t0 = options.t0.value_or(horizon_t0(t, cfg.lambda, cfg.c1));

  DenseValueTable table;
  table.t = t;
  table.t0 = t0;
  table.values.assign(static_cast<std::size_t>(t0 - t) + 1, std::vector<double>(static_cast<std::size_t>(top) + 1, 0.0));
  if (options.base_row) {
    if (options.base_row->size() != static_cast<std::size_t>(top) + 1) throw DomainError("base row size");
    table.values.back() = *options.base_row;
  }

  const auto pts = g_hat.points();
  const auto wts = g_hat.weights();
  for (int tau = t0 - 1; tau >= t; --tau) {
    const auto& next = table.values[static_cast<std::size_t>(tau + 1 - t)];
    auto& cur = table.values[static_cast<std::size_t>(tau - t)];
    for (int c = 0; c <= top; ++c) {
      double expected = 0.0;
      for (std::size_t a = 0; a < pts.size(); ++a) {
        double best = -1e300;
        for (int k = 0; k <= std::min(c, units); ++k) {
          const double b = static_cast<double>(k) / units;
          const double q = q_value(pts[a], static_cast<double>(c) / units, b, f_hat.at[static_cast<std::size_t>(k)],
                                   next[static_cast<std::size_t>(c - k)], next[static_cast<std::size_t>(c)], cfg.lambda);
          best = std::max(best, q);
        }
        expected += wts[a] * best;
      }
      cur[static_cast<std::size_t>(c)] = expected;
    }
  }
  return table;
}

CensoredCdfEstimate zeng_estimate(std::span<const CensoredSample> samples, const CoxFit& beta_fit,
                                  const CoxFit& gamma_fit, const KernelSpec& kernel) {
  const std::size_t n = samples.size();
  if (n == 0) throw DataError("censored estimate needs at least one sample");
  const double a = bandwidth(static_cast<long long>(n), kernel.bandwidth_c);

  auto dot = [](const std::vector<double>& c, const std::vector<double>& h) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * h[k];
    return s;
  };
  std::vector<double> z1(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    z1[i] = beta_fit.coefficients.empty() ? 0.0 : dot(beta_fit.coefficients, samples[i].features);
    z2[i] = gamma_fit.coefficients.empty() ? 0.0 : dot(gamma_fit.coefficients, samples[i].features);
  }
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i][j] = kernel((z1[i] - z1[j]) / a, (z2[i] - z2[j]) / a);
  // denom[i][j] = sum_m K_im 1{y_j <= y_m}
  std::vector<std::vector<double>> denom(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        if (samples[j].y <= samples[m].y) denom[i][j] += k[i][m];

  CensoredCdfEstimate est;
  est.sample_count = n;
  est.low_confidence = std::none_of(samples.begin(), samples.end(), [](const auto& s) { return s.event; });
  for (std::size_t g = 0; g < CensoredCdfEstimate::kGridSize; ++g) {
    const double x = CensoredCdfEstimate::grid_point(g);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double prod = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double num = (samples[j].y <= x && samples[j].event) ? k[i][j] : 0.0;
        if (num > 0.0) prod *= 1.0 - num / denom[i][j];
      }
      total += prod;
    }
    est.values[g] = std::clamp(total / static_cast<double>(n), 0.0, 1.0);
  }
  double running = 1.0;
  for (double& v : est.values) running = v = std::min(running, v);
  return est;
}

}  // namespace bidlab::reference
