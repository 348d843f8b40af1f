#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bidlab/rng.hpp"

namespace bidlab {

struct Uniform {
  double lo;
  double hi;
};

struct DiscreteAtoms {
  std::vector<double> points;  // strictly increasing
  std::vector<double> masses;  // positive, summing to one
  std::vector<double> cumulative;
};

struct PiecewiseLinearCdf {
  std::vector<std::pair<double, double>> knots;  // (x, F(x)), both nondecreasing
};

struct EmpiricalStep {
  std::vector<double> sorted;
};

// Distribution on [0, 1] for either the buyer's value or the highest rival bid.
//
// Immutable after construction; construction validates everything, so
// evaluation never throws except on out-of-domain arguments. CDFs are
// right-continuous: an atom at x is counted in cdf(x).
class DistributionSpec {
 public:
  using Variant = std::variant<Uniform, DiscreteAtoms, PiecewiseLinearCdf, EmpiricalStep>;

  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec atoms(std::vector<double> points, std::vector<double> masses);
  static DistributionSpec point_mass(double x) { return atoms({x}, {1.0}); }
  static DistributionSpec piecewise_linear(std::vector<std::pair<double, double>> knots);
  static DistributionSpec empirical(std::vector<double> samples);

  double cdf(double x) const;
  double quantile(double p) const;
  double sample(RngStream& rng) const { return quantile(rng.uniform()); }

  // inf{x : cdf(x) > 0}
  double support_min() const;
  // True when F has no mass at zero, i.e. a zero bid never wins.
  bool atomless_at_zero() const { return cdf(0.0) == 0.0; }
  // True for variants with finitely many support points.
  bool is_discrete() const;

  // Tag and flat parameter list, the serialized form used in config files.
  std::string tag() const;
  std::vector<double> params() const;
  static DistributionSpec from_tagged(const std::string& tag, std::span<const double> params);

  const Variant& variant() const { return v_; }

 private:
  explicit DistributionSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

inline double cdf_eval(const DistributionSpec& spec, double x) { return spec.cdf(x); }
inline double quantile(const DistributionSpec& spec, double p) { return spec.quantile(p); }
inline double sample(const DistributionSpec& spec, RngStream& rng) { return spec.sample(rng); }

}  // namespace bidlab
