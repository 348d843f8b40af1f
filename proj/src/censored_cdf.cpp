#include "bidlab/censored_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bidlab/empirical_cdf.hpp"
#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

constexpr std::size_t kRowBlock = 32;

double score(const CoxFit& fit, const std::vector<double>& h) {
  if (fit.coefficients.empty()) return 0.0;
  if (fit.coefficients.size() != h.size()) throw DataError("coefficient/feature dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) s += fit.coefficients[k] * h[k];
  return s;
}

}  // namespace

double KernelSpec::operator()(double u1, double u2) const {
  return std::exp(-0.5 * (u1 * u1 + u2 * u2));
}

double CensoredCdfEstimate::value_at(double x) const {
  if (x < 0.0) return 1.0;
  auto k = static_cast<std::size_t>(std::floor(x * 1000.0 + 1e-9));
  return values[std::min(k, kGridSize - 1)];
}

CensoredCdfEstimate zeng_estimate(std::span<const CensoredSample> samples, const CoxFit& beta_fit,
                                  const CoxFit& gamma_fit, const KernelSpec& kernel) {
  if (samples.empty()) throw DataError("censored estimate needs at least one sample");
  const std::size_t n = samples.size();
  const std::size_t grid = CensoredCdfEstimate::kGridSize;
  const double a = bandwidth(static_cast<long long>(n), kernel.bandwidth_c);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return samples[l].y < samples[r].y; });

  // Scores in sorted order, pre-divided by the bandwidth.
  std::vector<double> z1(n), z2(n), ys(n);
  std::vector<char> is_event(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& s = samples[order[p]];
    if (!std::isfinite(s.y)) throw DataError("non-finite y");
    z1[p] = score(beta_fit, s.features) / a;
    z2[p] = score(gamma_fit, s.features) / a;
    ys[p] = s.y;
    is_event[p] = s.event ? 1 : 0;
  }
  std::vector<std::size_t> tie_start(n);
  for (std::size_t p = 0; p < n; ++p)
    tie_start[p] = (p > 0 && ys[p] == ys[p - 1]) ? tie_start[p - 1] : p;

  std::vector<std::size_t> events;
  for (std::size_t p = 0; p < n; ++p)
    if (is_event[p]) events.push_back(p);

  CensoredCdfEstimate est;
  est.sample_count = n;
  est.low_confidence = events.empty();
  if (events.empty()) return est;

  // First event position not yet applied at each grid point.
  std::vector<std::size_t> events_upto(grid);
  {
    std::size_t e = 0;
    for (std::size_t k = 0; k < grid; ++k) {
      const double x = CensoredCdfEstimate::grid_point(k);
      while (e < events.size() && ys[events[e]] <= x) ++e;
      events_upto[k] = e;
    }
  }

  const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(grid, 0.0));
  int degenerate = 0;

#pragma omp parallel for schedule(dynamic) reduction(| : degenerate)
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    std::vector<double> weight(n), suffix(n + 1), factor(events.size());
    auto& acc = partial[blk];
    const std::size_t row_end = std::min(n, (blk + 1) * kRowBlock);
    for (std::size_t i = blk * kRowBlock; i < row_end; ++i) {
      for (std::size_t p = 0; p < n; ++p) weight[p] = kernel(z1[i] - z1[p], z2[i] - z2[p]);
      suffix[n] = 0.0;
      for (std::size_t p = n; p-- > 0;) suffix[p] = suffix[p + 1] + weight[p];
      for (std::size_t e = 0; e < events.size(); ++e) {
        const std::size_t p = events[e];
        const double at_risk = suffix[tie_start[p]];
        if (!std::isfinite(at_risk)) degenerate = 1;
        // An underflowed risk set carries no information for this row.
        factor[e] = at_risk > 0.0 ? 1.0 - weight[p] / at_risk : 1.0;
      }
      double prod = 1.0;
      std::size_t applied = 0;
      for (std::size_t k = 0; k < grid; ++k) {
        for (; applied < events_upto[k]; ++applied) prod *= factor[applied];
        acc[k] += prod;
      }
    }
  }

  if (degenerate) throw std::logic_error("non-finite kernel weights");

  std::vector<double> total(grid, 0.0);
  for (const auto& acc : partial)
    for (std::size_t k = 0; k < grid; ++k) total[k] += acc[k];

  double running = 1.0;
  for (std::size_t k = 0; k < grid; ++k) {
    const double v = std::clamp(total[k] / static_cast<double>(n), 0.0, 1.0);
    running = std::min(running, v);
    est.values[k] = running;
  }
  return est;
}

double censored_cdf_eval(const CensoredCdfEstimate& est, double b) {
  const double x = 1.0 - b;
  const auto below = static_cast<long long>(std::ceil(x * 1000.0 - 1e-9)) - 1;
  if (below < 0) return 1.0;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(below), CensoredCdfEstimate::kGridSize - 1);
  return est.values[k];
}

}  // namespace bidlab
