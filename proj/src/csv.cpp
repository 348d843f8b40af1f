#include "bidlab/csv.hpp"

#include <cstdio>
#include <cstdlib>

namespace bidlab {

std::string format_real(double x) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string opt(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

}  // namespace

void write_rounds_csv(std::ostream& os, const SimResult& result) {
  os << "t,v,b,m,won,r,c,o,remaining_budget\n";
  for (const auto& r : result.rounds) {
    os << r.t << ',' << format_real(r.v) << ',' << format_real(r.b) << ',' << format_real(r.m) << ','
       << (r.won ? 1 : 0) << ',' << format_real(r.r) << ',' << format_real(r.c) << ',' << format_real(r.o) << ','
       << format_real(r.remaining_budget) << '\n';
  }
}

void write_regret_csv(std::ostream& os, const std::vector<RegretSample>& samples) {
  os << "T,policy,rep,regret\n";
  for (const auto& s : samples) os << s.horizon << ',' << s.policy << ',' << s.rep << ',' << format_real(s.regret) << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<RegretReport>& reports) {
  os << "policy,T,reps,mean_regret,std_error,thm1_bound,thm2_bound,slope,slope_lo,slope_hi\n";
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      os << rep.policy << ',' << row.horizon << ',' << row.reps << ',' << format_real(row.mean) << ','
         << format_real(row.std_error) << ',' << opt(row.thm1) << ',' << opt(row.thm2) << ',';
      if (rep.slope)
        os << format_real(rep.slope->slope) << ',' << format_real(rep.slope->lo) << ',' << format_real(rep.slope->hi);
      else
        os << ",,";
      os << '\n';
    }
  }
}

void write_bounds_csv(std::ostream& os, const std::vector<int>& horizons, double lambda) {
  os << "T,lambda,thm1_bound,thm2_bound\n";
  for (int h : horizons)
    os << h << ',' << format_real(lambda) << ',' << format_real(thm1_bound(h, lambda)) << ','
       << format_real(thm2_bound(h, lambda)) << '\n';
}

void write_estimate_csv(std::ostream& os, const CensoredCdfEstimate& est) {
  os << "x,survival\n";
  for (std::size_t k = 0; k < est.values.size(); ++k)
    os << format_real(CensoredCdfEstimate::grid_point(k)) << ',' << format_real(est.values[k]) << '\n';
}

}  // namespace bidlab
