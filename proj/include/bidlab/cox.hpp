#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bidlab {

// One round of censored-feedback data on the reflected scale.
//   y        = min(1 - m, 1 - b)
//   event    = true when 1 - m was observed exactly (the round was lost)
//   features = summary of the history before the round, fixed dimension
struct CensoredSample {
  double y = 0.0;
  bool event = false;
  std::vector<double> features;
};

// Which indicator weights the partial likelihood: events fit the hazard of
// 1 - m, censorings fit the hazard of 1 - b.
enum class CoxTarget { Event, Censor };

struct CoxFit {
  std::vector<double> coefficients;
  bool converged = false;
  double log_likelihood = 0.0;
  int iterations = 0;
};

struct CoxOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
  double ridge = 1e-8;
  int max_halvings = 40;
};

struct CoxDerivatives {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Breslow partial log-likelihood, scaled by 1/t, with its gradient and
// Hessian. Risk sets are {i : y_i >= y_tau}, so tied times share a risk set.
// Throws DataError for non-finite features or inconsistent dimensions.
CoxDerivatives cox_partial_likelihood(std::span<const CensoredSample> samples, CoxTarget target,
                                      const Eigen::VectorXd& coefficients);

// Damped Newton ascent on the partial log-likelihood. Returns the zero vector
// with converged = false when fewer than two samples carry the target
// indicator.
CoxFit cox_fit(std::span<const CensoredSample> samples, CoxTarget target,
               const CoxOptions& options = {});

}  // namespace bidlab
