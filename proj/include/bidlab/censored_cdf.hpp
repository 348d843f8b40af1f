#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bidlab/cox.hpp"

namespace bidlab {

enum class KernelKind { Gaussian };

// Symmetric kernel on R^2 used to weight samples by closeness of their
// fitted risk scores. Bandwidth at sample size t is bandwidth(t, c).
struct KernelSpec {
  KernelKind kind = KernelKind::Gaussian;
  double bandwidth_c = 1.0;

  // Unnormalized kernel value at (u1, u2); the normalizing constant cancels
  // in every ratio the estimator forms.
  double operator()(double u1, double u2) const;
};

// Survival function of 1 - m tabulated on x = k * step, k = 0..1000.
struct CensoredCdfEstimate {
  static constexpr double kStep = 1e-3;
  static constexpr std::size_t kGridSize = 1001;

  std::vector<double> values = std::vector<double>(kGridSize, 1.0);
  std::size_t sample_count = 0;
  bool low_confidence = true;

  static double grid_point(std::size_t k) { return static_cast<double>(k) / 1000.0; }
  // Step interpolation: value at the largest grid point <= x.
  double value_at(double x) const;
};

// Kernel-weighted product-limit estimate of the survival function of 1 - m:
//
//   S(x) = (1/t) sum_i prod_{j event, y_j <= x}
//            (1 - K((Z_i - Z_j)/a) / sum_{m : y_m >= y_j} K((Z_i - Z_m)/a))
//
// with Z_i = (beta' h_i, gamma' h_i) and a = bandwidth(t, c). The result is
// clamped to [0,1] and made nonincreasing in x. Rows are processed in fixed
// blocks so the sum order, and hence every output bit, does not depend on
// the OpenMP thread count.
CensoredCdfEstimate zeng_estimate(std::span<const CensoredSample> samples, const CoxFit& beta_fit,
                                  const CoxFit& gamma_fit, const KernelSpec& kernel);

// F(b) read off the survival estimate at the grid point just below 1 - b,
// so an atom of m exactly at b is counted.
double censored_cdf_eval(const CensoredCdfEstimate& est, double b);

}  // namespace bidlab
