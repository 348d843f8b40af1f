#include "bidlab/cox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

std::size_t checked_dimension(std::span<const CensoredSample> samples) {
  if (samples.empty()) throw DataError("Cox fit needs at least one sample");
  const std::size_t d = samples.front().features.size();
  for (const auto& s : samples) {
    if (s.features.size() != d) throw DataError("feature dimension differs across samples");
    if (!std::isfinite(s.y)) throw DataError("non-finite y");
    for (double f : s.features)
      if (!std::isfinite(f)) throw DataError("non-finite feature");
  }
  return d;
}

bool carries(const CensoredSample& s, CoxTarget target) {
  return target == CoxTarget::Event ? s.event : !s.event;
}

}  // namespace

CoxDerivatives cox_partial_likelihood(std::span<const CensoredSample> samples, CoxTarget target,
                                      const Eigen::VectorXd& coefficients) {
  const std::size_t d = checked_dimension(samples);
  if (static_cast<std::size_t>(coefficients.size()) != d)
    throw DataError("coefficient dimension differs from feature dimension");
  const std::size_t n = samples.size();
  const auto dim = static_cast<Eigen::Index>(d);

  std::vector<Eigen::VectorXd> h(n);
  std::vector<double> eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = Eigen::Map<const Eigen::VectorXd>(samples[i].features.data(), dim);
    eta[i] = coefficients.dot(h[i]);
  }
  const double shift = *std::max_element(eta.begin(), eta.end());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a].y > samples[b].y; });

  CoxDerivatives out;
  out.gradient = Eigen::VectorXd::Zero(dim);
  out.hessian = Eigen::MatrixXd::Zero(dim, dim);
  double s0 = 0.0;
  Eigen::VectorXd s1 = Eigen::VectorXd::Zero(dim);
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(dim, dim);

  std::size_t k = 0;
  while (k < n) {
    // Add the whole tie group to the risk set before scoring its members.
    std::size_t end = k;
    const double y = samples[order[k]].y;
    while (end < n && samples[order[end]].y == y) {
      const std::size_t i = order[end];
      const double w = std::exp(eta[i] - shift);
      s0 += w;
      s1 += w * h[i];
      s2 += w * h[i] * h[i].transpose();
      ++end;
    }
    const Eigen::VectorXd mean = s1 / s0;
    const double log_s0 = std::log(s0) + shift;
    for (std::size_t g = k; g < end; ++g) {
      const std::size_t i = order[g];
      if (!carries(samples[i], target)) continue;
      out.value += eta[i] - log_s0;
      out.gradient += h[i] - mean;
      out.hessian -= s2 / s0 - mean * mean.transpose();
    }
    k = end;
  }
  const double scale = 1.0 / static_cast<double>(n);
  out.value *= scale;
  out.gradient *= scale;
  out.hessian *= scale;
  return out;
}

CoxFit cox_fit(std::span<const CensoredSample> samples, CoxTarget target, const CoxOptions& options) {
  const std::size_t d = checked_dimension(samples);
  const auto dim = static_cast<Eigen::Index>(d);

  CoxFit fit;
  fit.coefficients.assign(d, 0.0);
  const auto carrying = std::count_if(samples.begin(), samples.end(),
                                      [&](const CensoredSample& s) { return carries(s, target); });
  if (carrying < 2) return fit;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(dim);
  CoxDerivatives cur = cox_partial_likelihood(samples, target, beta);
  const Eigen::MatrixXd ridge = options.ridge * Eigen::MatrixXd::Identity(dim, dim);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    fit.iterations = iter;
    if (cur.gradient.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    const Eigen::MatrixXd neg_hessian = -cur.hessian + ridge;
    const Eigen::VectorXd step = neg_hessian.ldlt().solve(cur.gradient);
    if (!step.allFinite()) break;

    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h <= options.max_halvings; ++h, scale *= 0.5) {
      const Eigen::VectorXd trial = beta + scale * step;
      CoxDerivatives next = cox_partial_likelihood(samples, target, trial);
      if (std::isfinite(next.value) && next.value >= cur.value) {
        beta = trial;
        cur = std::move(next);
        improved = true;
        break;
      }
    }
    if (!improved) {
      fit.converged = cur.gradient.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance;
      break;
    }
    fit.iterations = iter + 1;
  }
  if (!fit.converged)
    fit.converged = cur.gradient.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance;

  fit.coefficients.assign(beta.data(), beta.data() + dim);
  fit.log_likelihood = cur.value;
  return fit;
}

}  // namespace bidlab
