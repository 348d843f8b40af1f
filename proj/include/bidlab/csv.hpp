#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bidlab/auction.hpp"
#include "bidlab/censored_cdf.hpp"
#include "bidlab/harness.hpp"

namespace bidlab {

// Shortest text that reads back to the same double.
std::string format_real(double x);

// t,v,b,m,won,r,c,o,remaining_budget
void write_rounds_csv(std::ostream& os, const SimResult& result);
// T,policy,rep,regret
void write_regret_csv(std::ostream& os, const std::vector<RegretSample>& samples);
// policy,T,reps,mean_regret,std_error,thm1_bound,thm2_bound,slope,slope_lo,slope_hi
void write_summary_csv(std::ostream& os, const std::vector<RegretReport>& reports);
// T,lambda,thm1_bound,thm2_bound
void write_bounds_csv(std::ostream& os, const std::vector<int>& horizons, double lambda);
// x,survival
void write_estimate_csv(std::ostream& os, const CensoredCdfEstimate& est);

}  // namespace bidlab
