#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bidlab/empirical_cdf.hpp"
#include "bidlab/errors.hpp"
#include "bidlab/rng.hpp"

using namespace bidlab;

TEST_CASE("empirical cdf insert") {
  EmpiricalCdf e;
  CHECK(e.empty());
  e.insert(0.2);
  e.insert(0.8);
  e = ecdf_insert(e, 0.4);
  CHECK(e.count() == 3);
  CHECK(e(0.4) == doctest::Approx(2.0 / 3.0));
  CHECK(e(0.39) == doctest::Approx(1.0 / 3.0));
  CHECK(e(1.0) == 1.0);
  CHECK(std::is_sorted(e.sorted().begin(), e.sorted().end()));

  EmpiricalCdf one;
  one.insert(0.7);
  CHECK(one(0.7) == 1.0);
  CHECK(one(0.95) == 1.0);
  CHECK(one(0.69) == 0.0);

  CHECK_THROWS_AS(e.insert(1.01), DomainError);
  CHECK_THROWS_AS(e.insert(-0.01), DomainError);
  CHECK_THROWS_AS(e.insert(std::nan("")), DomainError);
}

TEST_CASE("empirical cdf matches a direct count") {
  RngStream rng(5);
  EmpiricalCdf e;
  std::vector<double> raw;
  for (int i = 0; i < 500; ++i) {
    const double x = std::floor(rng.uniform() * 50.0) / 50.0;  // plenty of ties
    e.insert(x);
    raw.push_back(x);
  }
  for (int k = 0; k <= 100; ++k) {
    const double x = k / 100.0;
    const auto hits = std::count_if(raw.begin(), raw.end(), [&](double r) { return r <= x; });
    CHECK(e(x) == static_cast<double>(hits) / 500.0);
  }
}

TEST_CASE("dkw radius") {
  CHECK(dkw_radius(200, 0.05) == doctest::Approx(0.0960322791).epsilon(1e-9));
  CHECK(dkw_radius(1, 2.0 * std::exp(-2.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dkw_radius(1, 2.0) == 0.0);
  CHECK(dkw_radius(12345, 2.0) == 0.0);
  CHECK_THROWS_AS(dkw_radius(10, 0.0), DomainError);
  CHECK_THROWS_AS(dkw_radius(10, -1.0), DomainError);
  CHECK_THROWS_AS(dkw_radius(10, 2.5), DomainError);
  CHECK_THROWS_AS(dkw_radius(0, 0.1), DomainError);
}

TEST_CASE("dkw band holds for uniform samples") {
  const double radius = dkw_radius(1000, 0.001);
  int misses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    RngStream rng(static_cast<std::uint64_t>(trial), 11);
    EmpiricalCdf e;
    for (int i = 0; i < 1000; ++i) e.insert(rng.uniform());
    if (sup_distance(e.sorted(), [](double x) { return x; }) > radius) ++misses;
  }
  // Expected misses are at most 1; 4 or more has probability below 2%.
  CHECK(misses <= 3);
}

TEST_CASE("sup distance is exact at jump points") {
  std::vector<double> xs{0.25, 0.5};
  // F_n jumps to 0.5 at 0.25 (gap 0.25 above) and to 1 at 0.5 (gap 0.5).
  CHECK(sup_distance(xs, [](double x) { return x; }) == doctest::Approx(0.5));
  std::vector<double> ys{0.9};
  CHECK(sup_distance(ys, [](double x) { return x; }) == doctest::Approx(0.9));
}

TEST_CASE("bandwidth schedule") {
  CHECK(bandwidth(1000, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(bandwidth(8, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  double prev = INFINITY;
  for (long long t = 1; t <= 1000000; ++t) {
    const double a = bandwidth(t, 1.0);
    const double v = static_cast<double>(t) * a * a * a * a;
    REQUIRE(v < prev);
    prev = v;
  }
}
