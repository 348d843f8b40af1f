#include "bidlab/empirical_cdf.hpp"

#include <algorithm>
#include <cmath>

#include "bidlab/errors.hpp"

namespace bidlab {

void EmpiricalCdf::insert(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("empirical CDF observations must lie in [0,1]");
  sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), x), x);
}

double EmpiricalCdf::operator()(double x) const {
  if (sorted_.empty()) return 0.0;
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double dkw_radius(long long t, double delta) {
  if (t < 1) throw DomainError("dkw_radius needs t >= 1");
  if (!(delta > 0.0 && delta <= 2.0)) throw DomainError("dkw_radius needs 0 < delta <= 2");
  return std::sqrt(0.5 * std::log(2.0 / delta)) / std::sqrt(static_cast<double>(t));
}

double bandwidth(long long t, double c) {
  if (t < 1) throw DomainError("bandwidth needs t >= 1");
  if (!(c > 0.0)) throw DomainError("bandwidth constant must be positive");
  return c / std::cbrt(static_cast<double>(t));
}

}  // namespace bidlab
