#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bidlab/censored_cdf.hpp"
#include "bidlab/errors.hpp"
#include "bidlab/reference.hpp"
#include "bidlab/rng.hpp"

using namespace bidlab;

namespace {

// Classical product-limit survival estimate of y at x.
double kaplan_meier(const std::vector<CensoredSample>& s, double x) {
  std::vector<double> times;
  for (const auto& a : s)
    if (a.event && a.y <= x) times.push_back(a.y);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  double surv = 1.0;
  for (double t : times) {
    double at_risk = 0.0, deaths = 0.0;
    for (const auto& a : s) {
      if (a.y >= t) at_risk += 1.0;
      if (a.y == t && a.event) deaths += 1.0;
    }
    surv *= 1.0 - deaths / at_risk;
  }
  return surv;
}

CoxFit coefficients(std::vector<double> c) {
  CoxFit f;
  f.coefficients = std::move(c);
  f.converged = true;
  return f;
}

std::vector<CensoredSample> simulated_rounds(std::uint64_t seed, std::size_t n, bool constant_features) {
  RngStream rng(seed);
  std::vector<CensoredSample> out(n);
  for (auto& s : out) {
    const double m = 0.5 * rng.uniform();
    const double b = 0.6 * rng.uniform();
    s.event = b < m;
    s.y = s.event ? 1.0 - m : 1.0 - b;
    s.features = constant_features ? std::vector<double>{0.5, 0.5} : std::vector<double>{rng.uniform(), rng.uniform()};
  }
  return out;
}

}  // namespace

TEST_CASE("kernel is symmetric and positive") {
  KernelSpec k;
  CHECK(k(0.0, 0.0) == 1.0);
  CHECK(k(0.3, -1.2) == k(-0.3, 1.2));
  CHECK(k(5.0, 5.0) > 0.0);
}

TEST_CASE("hand product-limit example") {
  std::vector<CensoredSample> s = {{0.2, true, {1.0}}, {0.4, false, {1.0}}, {0.6, true, {1.0}}};
  const auto est = zeng_estimate(s, coefficients({0.3}), coefficients({-0.2}), KernelSpec{KernelKind::Gaussian, 1e6});
  CHECK(est.value_at(0.19) == doctest::Approx(1.0));
  CHECK(est.value_at(0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(est.value_at(0.7) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(censored_cdf_eval(est, 1.0 - 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK_FALSE(est.low_confidence);
  CHECK(est.sample_count == 3);
}

TEST_CASE("no events gives the empty product") {
  std::vector<CensoredSample> s = {{0.2, false, {0.1}}, {0.5, false, {0.3}}};
  const auto est = zeng_estimate(s, coefficients({1.0}), coefficients({1.0}), KernelSpec{});
  CHECK(est.low_confidence);
  for (double v : est.values) CHECK(v == 1.0);
  for (int k = 0; k <= 100; ++k) CHECK(censored_cdf_eval(est, k / 100.0) == 1.0);
}

TEST_CASE("all events, huge bandwidth: empirical survival function") {
  RngStream rng(8);
  std::vector<CensoredSample> s(40);
  for (auto& a : s) a = {rng.uniform(), true, {rng.uniform()}};
  const auto est = zeng_estimate(s, coefficients({0.7}), coefficients({0.2}), KernelSpec{KernelKind::Gaussian, 1e6});
  for (std::size_t k = 0; k < CensoredCdfEstimate::kGridSize; ++k) {
    const double x = CensoredCdfEstimate::grid_point(k);
    const double surv = static_cast<double>(std::count_if(s.begin(), s.end(), [&](const auto& a) { return a.y > x; })) / 40.0;
    CHECK(est.values[k] == doctest::Approx(surv).epsilon(1e-6));
  }
}

TEST_CASE("constant features reduce to Kaplan-Meier") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto s = simulated_rounds(seed, 300, true);
    const auto est = zeng_estimate(s, coefficients({0.4, -1.0}), coefficients({2.0, 0.5}), KernelSpec{KernelKind::Gaussian, 1e6});
    for (std::size_t k = 0; k < CensoredCdfEstimate::kGridSize; k += 7) {
      const double x = CensoredCdfEstimate::grid_point(k);
      CHECK(std::abs(est.values[k] - kaplan_meier(s, x)) <= 1e-6);
    }
  }
}

TEST_CASE("blocked estimator equals the literal formula") {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    auto s = simulated_rounds(seed, 90, false);
    // Coarse y values so tied risk sets are exercised.
    for (auto& a : s) a.y = std::round(a.y * 40.0) / 40.0;
    const auto beta = coefficients({1.3, -0.4});
    const auto gamma = coefficients({-0.6, 0.9});
    KernelSpec k{KernelKind::Gaussian, 0.3};
    const auto fast = zeng_estimate(s, beta, gamma, k);
    const auto slow = reference::zeng_estimate(s, beta, gamma, k);
    for (std::size_t g = 0; g < CensoredCdfEstimate::kGridSize; ++g) CHECK(fast.values[g] == doctest::Approx(slow.values[g]).epsilon(1e-12));
  }
}

TEST_CASE("estimate is monotone and bounded") {
  auto s = simulated_rounds(21, 500, false);
  const auto est = zeng_estimate(s, coefficients({2.0, -1.0}), coefficients({0.5, 3.0}), KernelSpec{KernelKind::Gaussian, 0.2});
  for (std::size_t g = 0; g < est.values.size(); ++g) {
    CHECK(est.values[g] >= 0.0);
    CHECK(est.values[g] <= 1.0);
    if (g > 0) CHECK(est.values[g] <= est.values[g - 1]);
  }
  double prev = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double f = censored_cdf_eval(est, k / 1000.0);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("output bits do not depend on the thread count") {
  auto s = simulated_rounds(5, 700, false);
  const auto beta = coefficients({0.8, 0.1});
  const auto gamma = coefficients({-0.3, 0.6});
  omp_set_num_threads(1);
  const auto one = zeng_estimate(s, beta, gamma, KernelSpec{});
  omp_set_num_threads(4);
  const auto four = zeng_estimate(s, beta, gamma, KernelSpec{});
  omp_set_num_threads(1);
  CHECK(one.values == four.values);
}

TEST_CASE("cdf evaluation reads the grid point below 1 - b") {
  CensoredCdfEstimate est;
  for (std::size_t k = 0; k < est.values.size(); ++k) est.values[k] = 1.0 - static_cast<double>(k) / 1000.0;
  CHECK(censored_cdf_eval(est, 0.5) == doctest::Approx(1.0 - 0.499));
  CHECK(censored_cdf_eval(est, 1.0) == 1.0);
  CHECK(censored_cdf_eval(est, 0.0) == doctest::Approx(1.0 - 0.999));
  CHECK(censored_cdf_eval(est, 0.2345) == doctest::Approx(1.0 - 0.765));
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(zeng_estimate(std::vector<CensoredSample>{}, coefficients({}), coefficients({}), KernelSpec{}), DataError);
}
