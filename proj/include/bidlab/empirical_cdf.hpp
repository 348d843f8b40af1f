#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bidlab {

// Empirical CDF over observations in [0,1]: F(x) = (1/t) #{obs <= x}.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;

  // Throws DomainError for x outside [0,1].
  void insert(double x);
  double operator()(double x) const;

  std::size_t count() const { return sorted_.size(); }
  bool empty() const { return sorted_.empty(); }
  std::span<const double> sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Functional form of insert, for callers that prefer value semantics.
inline EmpiricalCdf ecdf_insert(EmpiricalCdf ecdf, double x) {
  ecdf.insert(x);
  return ecdf;
}

// Uniform confidence radius sqrt(ln(2/delta) / 2) / sqrt(t) for the empirical
// CDF of t i.i.d. draws, valid with probability 1 - delta.
double dkw_radius(long long t, double delta);

// Kernel bandwidth c * t^(-1/3). With this exponent t a^2 -> inf and
// t a^4 -> 0 as t grows.
double bandwidth(long long t, double c);

// sup_x |F_n(x) - F(x)| for the empirical CDF of `sorted` against a
// continuous CDF, evaluated exactly at the jump points.
template <class Cdf>
double sup_distance(std::span<const double> sorted, const Cdf& cdf) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    worst = above > worst ? above : worst;
    worst = below > worst ? below : worst;
  }
  return worst;
}

}  // namespace bidlab
