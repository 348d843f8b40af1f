#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bidlab/distributions.hpp"
#include "bidlab/empirical_cdf.hpp"
#include "bidlab/errors.hpp"
#include "bidlab/rng.hpp"

using namespace bidlab;

namespace {

std::vector<DistributionSpec> zoo() {
  return {
      DistributionSpec::uniform(0.0, 0.5),
      DistributionSpec::uniform(0.4, 1.0),
      DistributionSpec::atoms({0.2, 0.6}, {0.5, 0.5}),
      DistributionSpec::atoms({0.0, 0.35, 0.9}, {0.2, 0.3, 0.5}),
      DistributionSpec::piecewise_linear({{0.1, 0.0}, {0.3, 0.6}, {0.3, 0.7}, {0.8, 1.0}}),
      DistributionSpec::empirical({0.5, 0.1, 0.3, 0.3, 0.9}),
  };
}

}  // namespace

TEST_CASE("cdf examples") {
  CHECK(DistributionSpec::uniform(0.0, 0.5).cdf(0.25) == doctest::Approx(0.5));
  CHECK(DistributionSpec::uniform(0.4, 1.0).cdf(0.2) == 0.0);
  CHECK(DistributionSpec::atoms({0.2, 0.6}, {0.5, 0.5}).cdf(0.2) == doctest::Approx(0.5));
  CHECK(DistributionSpec::atoms({0.2, 0.6}, {0.5, 0.5}).cdf(0.19999) == 0.0);
  CHECK(DistributionSpec::uniform(0.0, 0.5).cdf(1.0) == 1.0);
}

TEST_CASE("piecewise linear cdf with a jump") {
  auto d = DistributionSpec::piecewise_linear({{0.1, 0.0}, {0.3, 0.6}, {0.3, 0.7}, {0.8, 1.0}});
  CHECK(d.cdf(0.05) == 0.0);
  CHECK(d.cdf(0.2) == doctest::Approx(0.3));
  CHECK(d.cdf(0.3) == doctest::Approx(0.7));
  CHECK(d.cdf(0.55) == doctest::Approx(0.85));
  CHECK(d.quantile(0.65) == doctest::Approx(0.3));
  CHECK(d.quantile(0.3) == doctest::Approx(0.2));
}

TEST_CASE("quantile examples") {
  CHECK(DistributionSpec::uniform(0.0, 0.5).quantile(0.5) == doctest::Approx(0.25));
  CHECK(DistributionSpec::atoms({0.2, 0.6}, {0.5, 0.5}).quantile(0.7) == doctest::Approx(0.6));
  CHECK(DistributionSpec::atoms({0.2, 0.6}, {0.5, 0.5}).quantile(0.5) == doctest::Approx(0.2));
  for (const auto& d : zoo()) CHECK(d.quantile(0.0) == d.support_min());
  CHECK_THROWS_AS(DistributionSpec::uniform(0.0, 1.0).quantile(1.5), DomainError);
  CHECK_THROWS_AS(DistributionSpec::uniform(0.0, 1.0).quantile(-0.1), DomainError);
}

TEST_CASE("empirical step quantile is the generalized inverse") {
  auto d = DistributionSpec::empirical({0.5, 0.1, 0.3, 0.3, 0.9});
  CHECK(d.quantile(0.2) == doctest::Approx(0.1));
  CHECK(d.quantile(0.21) == doctest::Approx(0.3));
  CHECK(d.quantile(0.6) == doctest::Approx(0.3));
  CHECK(d.quantile(0.61) == doctest::Approx(0.5));
  CHECK(d.quantile(1.0) == doctest::Approx(0.9));
}

TEST_CASE("quantile and cdf are generalized inverses") {
  for (const auto& d : zoo()) {
    for (int i = 0; i <= 1000; ++i) {
      const double p = i / 1000.0;
      CHECK(d.cdf(d.quantile(p)) >= p - 1e-12);
    }
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      // Q(0) is the bottom of the support, so only p > 0 is covered.
      if (d.cdf(x) > 0.0) CHECK(d.quantile(d.cdf(x)) <= x + 1e-12);
    }
  }
}

TEST_CASE("cdf is monotone and reaches one") {
  for (const auto& d : zoo()) {
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double f = d.cdf(i / 2000.0);
      CHECK(f >= prev);
      CHECK(f <= 1.0);
      prev = f;
    }
    CHECK(d.cdf(1.0) == 1.0);
  }
}

TEST_CASE("construction rejects malformed specs") {
  CHECK_THROWS_AS(DistributionSpec::uniform(0.5, 0.4), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::uniform(-0.1, 0.4), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::atoms({0.2, 0.6}, {0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::atoms({0.6, 0.2}, {0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::atoms({0.2}, {1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::piecewise_linear({{0.0, 0.0}, {0.5, 0.7}, {0.6, 0.5}, {1.0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::piecewise_linear({{0.0, 0.0}, {0.5, 0.7}}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::empirical({}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::empirical({1.2}), ConfigError);
  CHECK_THROWS_AS(DistributionSpec::from_tagged("beta", std::vector<double>{1.0, 2.0}), ConfigError);
}

TEST_CASE("tagged round trip") {
  for (const auto& d : zoo()) {
    auto back = DistributionSpec::from_tagged(d.tag(), d.params());
    for (int i = 0; i <= 100; ++i) CHECK(back.cdf(i / 100.0) == d.cdf(i / 100.0));
  }
}

TEST_CASE("sampling") {
  RngStream rng(42);
  auto u = DistributionSpec::uniform(0.4, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.sample(rng);
    CHECK(x >= 0.4);
    CHECK(x <= 1.0);
  }
  auto point = DistributionSpec::point_mass(0.3);
  for (int i = 0; i < 100; ++i) CHECK(point.sample(rng) == 0.3);

  RngStream a(9, 3), b(9, 3), c(9, 4);
  std::vector<double> xa, xb, xc;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(u.sample(a));
    xb.push_back(u.sample(b));
    xc.push_back(u.sample(c));
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
}

TEST_CASE("rng stream is pinned to its seed words") {
  // mt19937_64 seeded via seed_seq{lo32, hi32, stream}; top 53 bits scaled.
  std::seed_seq seq{0x89abcdefu, 0x01234567u, 5u};
  std::mt19937_64 eng(seq);
  RngStream s(0x0123456789abcdefULL, 5);
  for (int i = 0; i < 50; ++i) CHECK(s.uniform() == static_cast<double>(eng() >> 11) * 0x1.0p-53);
  CHECK(replication_seed(12, 5) == (12ULL ^ 5ULL));
}

TEST_CASE("empirical cdf of samples stays inside the DKW band") {
  // delta = 1e-3 per trial; allow the Monte Carlo tail of a binomial(200, 1e-3).
  const double radius = dkw_radius(100000, 1e-3);
  int misses = 0;
  const std::vector<DistributionSpec> specs = {DistributionSpec::uniform(0.0, 0.5), DistributionSpec::uniform(0.4, 1.0)};
  for (const auto& d : specs) {
    for (int trial = 0; trial < 100; ++trial) {
      RngStream rng(1000 + static_cast<std::uint64_t>(trial), 7);
      std::vector<double> xs(100000);
      for (auto& x : xs) x = d.sample(rng);
      std::sort(xs.begin(), xs.end());
      if (sup_distance(xs, [&](double x) { return d.cdf(x); }) > radius) ++misses;
    }
  }
  CHECK(misses <= 2);
}
