#pragma once

// Serial, straightforward versions of the two heavy kernels. They follow the
// defining formulas directly, are slow, and exist so the optimized OpenMP
// kernels have something independent to be tested and benchmarked against.

#include <span>
#include <vector>

#include "bidlab/censored_cdf.hpp"
#include "bidlab/dp_solver.hpp"

namespace bidlab::reference {

struct DenseValueTable {
  int t = 0;
  int t0 = 0;
  std::vector<std::vector<double>> values;  // [tau - t][budget cell]

  double value(int cell, int tau) const { return values.at(static_cast<std::size_t>(tau - t)).at(static_cast<std::size_t>(cell)); }
};

// Full (budget x time) table; every cell maximizes Q over bids separately
// for each value atom. No budget capping, no envelope, no threads.
DenseValueTable solve_value_table(const BidCdf& f_hat, const ValueAtoms& g_hat, int t, double budget_max,
                                  const DpConfig& cfg, const SolveOptions& options = {});

// Evaluates the kernel product-limit formula literally at every grid point:
// O(grid * n^2) after an O(n^3) risk-set pass. Only for small n.
CensoredCdfEstimate zeng_estimate(std::span<const CensoredSample> samples, const CoxFit& beta_fit,
                                  const CoxFit& gamma_fit, const KernelSpec& kernel);

}  // namespace bidlab::reference
