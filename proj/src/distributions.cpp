#include "bidlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

constexpr double kMassTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid distribution: " + what);
}

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  require(in_unit(lo) && in_unit(hi), "uniform bounds must lie in [0,1]");
  require(lo < hi, "uniform requires lo < hi");
  return DistributionSpec(Uniform{lo, hi});
}

DistributionSpec DistributionSpec::atoms(std::vector<double> points, std::vector<double> masses) {
  require(!points.empty(), "atoms need at least one point");
  require(points.size() == masses.size(), "atoms need one mass per point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(in_unit(points[i]), "atom outside [0,1]");
    require(std::isfinite(masses[i]) && masses[i] > 0.0, "atom masses must be positive");
    if (i > 0) require(points[i] > points[i - 1], "atom points must be strictly increasing");
  }
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  require(std::abs(total - 1.0) <= kMassTol, "atom masses must sum to 1");
  std::vector<double> cumulative(masses.size());
  std::partial_sum(masses.begin(), masses.end(), cumulative.begin());
  cumulative.back() = 1.0;
  return DistributionSpec(DiscreteAtoms{std::move(points), std::move(masses), std::move(cumulative)});
}

DistributionSpec DistributionSpec::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  require(!knots.empty(), "piecewise-linear CDF needs knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    require(in_unit(knots[i].first) && in_unit(knots[i].second), "knot outside [0,1]^2");
    if (i > 0) {
      require(knots[i].first >= knots[i - 1].first, "knot x must be nondecreasing");
      require(knots[i].second >= knots[i - 1].second, "knot F must be nondecreasing");
    }
  }
  require(std::abs(knots.back().second - 1.0) <= kMassTol, "last knot must have F = 1");
  knots.back().second = 1.0;
  return DistributionSpec(PiecewiseLinearCdf{std::move(knots)});
}

DistributionSpec DistributionSpec::empirical(std::vector<double> samples) {
  require(!samples.empty(), "empirical distribution needs samples");
  for (double s : samples) require(in_unit(s), "sample outside [0,1]");
  std::sort(samples.begin(), samples.end());
  return DistributionSpec(EmpiricalStep{std::move(samples)});
}

double DistributionSpec::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Uniform& u) {
            if (x < u.lo) return 0.0;
            if (x >= u.hi) return 1.0;
            return (x - u.lo) / (u.hi - u.lo);
          },
          [x](const DiscreteAtoms& a) {
            auto it = std::upper_bound(a.points.begin(), a.points.end(), x);
            if (it == a.points.begin()) return 0.0;
            return a.cumulative[static_cast<std::size_t>(it - a.points.begin()) - 1];
          },
          [x](const PiecewiseLinearCdf& p) {
            const auto& k = p.knots;
            if (x < k.front().first) return 0.0;
            if (x >= k.back().first) return 1.0;
            auto it = std::upper_bound(k.begin(), k.end(), x,
                                       [](double v, const auto& knot) { return v < knot.first; });
            const auto& right = *it;
            const auto& left = *(it - 1);
            // left.first <= x < right.first, so the segment is not vertical.
            return left.second + (right.second - left.second) * (x - left.first) /
                                     (right.first - left.first);
          },
          [x](const EmpiricalStep& e) {
            auto it = std::upper_bound(e.sorted.begin(), e.sorted.end(), x);
            return static_cast<double>(it - e.sorted.begin()) /
                   static_cast<double>(e.sorted.size());
          },
      },
      v_);
}

double DistributionSpec::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0,1]");
  if (p == 0.0) return support_min();
  return std::visit(
      Overloaded{
          [p](const Uniform& u) { return std::min(u.hi, u.lo + p * (u.hi - u.lo)); },
          [p](const DiscreteAtoms& a) {
            auto it = std::lower_bound(a.cumulative.begin(), a.cumulative.end(), p);
            if (it == a.cumulative.end()) --it;
            return a.points[static_cast<std::size_t>(it - a.cumulative.begin())];
          },
          [p](const PiecewiseLinearCdf& pl) {
            const auto& k = pl.knots;
            if (p <= k.front().second) return k.front().first;
            auto it = std::lower_bound(k.begin(), k.end(), p,
                                       [](const auto& knot, double v) { return knot.second < v; });
            if (it == k.end()) return k.back().first;
            const auto& right = *it;
            const auto& left = *(it - 1);
            if (right.first == left.first) return right.first;
            const double w = (p - left.second) / (right.second - left.second);
            return left.first + w * (right.first - left.first);
          },
          [p](const EmpiricalStep& e) {
            const auto n = e.sorted.size();
            // smallest k with (k + 1) / n >= p
            auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
            k = std::clamp<std::size_t>(k, 1, n) - 1;
            while (k > 0 && static_cast<double>(k) / static_cast<double>(n) >= p) --k;
            while (k + 1 < n && static_cast<double>(k + 1) / static_cast<double>(n) < p) ++k;
            return e.sorted[k];
          },
      },
      v_);
}

double DistributionSpec::support_min() const {
  return std::visit(Overloaded{
                        [](const Uniform& u) { return u.lo; },
                        [](const DiscreteAtoms& a) { return a.points.front(); },
                        [](const PiecewiseLinearCdf& pl) {
                          double lo = pl.knots.front().first;
                          for (const auto& [x, f] : pl.knots) {
                            if (f > 0.0) break;
                            lo = x;
                          }
                          return lo;
                        },
                        [](const EmpiricalStep& e) { return e.sorted.front(); },
                    },
                    v_);
}

bool DistributionSpec::is_discrete() const {
  return std::holds_alternative<DiscreteAtoms>(v_) || std::holds_alternative<EmpiricalStep>(v_);
}

std::string DistributionSpec::tag() const {
  return std::visit(Overloaded{
                        [](const Uniform&) { return std::string("uniform"); },
                        [](const DiscreteAtoms&) { return std::string("atoms"); },
                        [](const PiecewiseLinearCdf&) { return std::string("piecewise_linear"); },
                        [](const EmpiricalStep&) { return std::string("empirical"); },
                    },
                    v_);
}

std::vector<double> DistributionSpec::params() const {
  return std::visit(Overloaded{
                        [](const Uniform& u) { return std::vector<double>{u.lo, u.hi}; },
                        [](const DiscreteAtoms& a) {
                          std::vector<double> out;
                          for (std::size_t i = 0; i < a.points.size(); ++i) {
                            out.push_back(a.points[i]);
                            out.push_back(a.masses[i]);
                          }
                          return out;
                        },
                        [](const PiecewiseLinearCdf& pl) {
                          std::vector<double> out;
                          for (const auto& [x, f] : pl.knots) {
                            out.push_back(x);
                            out.push_back(f);
                          }
                          return out;
                        },
                        [](const EmpiricalStep& e) { return e.sorted; },
                    },
                    v_);
}

DistributionSpec DistributionSpec::from_tagged(const std::string& tag, std::span<const double> params) {
  if (tag == "uniform") {
    require(params.size() == 2, "uniform takes [lo, hi]");
    return uniform(params[0], params[1]);
  }
  if (tag == "atoms" || tag == "piecewise_linear") {
    require(!params.empty() && params.size() % 2 == 0, tag + " takes an even-length pair list");
    if (tag == "atoms") {
      std::vector<double> pts, ms;
      for (std::size_t i = 0; i < params.size(); i += 2) {
        pts.push_back(params[i]);
        ms.push_back(params[i + 1]);
      }
      return atoms(std::move(pts), std::move(ms));
    }
    std::vector<std::pair<double, double>> knots;
    for (std::size_t i = 0; i < params.size(); i += 2) knots.emplace_back(params[i], params[i + 1]);
    return piecewise_linear(std::move(knots));
  }
  if (tag == "empirical") return empirical({params.begin(), params.end()});
  throw ConfigError("unknown distribution type '" + tag + "'");
}

}  // namespace bidlab
