#include <cmath>
#include <doctest.h>

#include "assocmine/random.hpp"
#include "assocmine/significance.hpp"
#include "helpers.hpp"

using namespace assocmine;
using testutil::exact_binom_tail;

TEST_CASE("binom_tail trivial anchors") {
  CHECK(binom_tail(0, 10, 0.3) == 1.0);
  CHECK(binom_tail(0, 0, 0.0) == 1.0);
  CHECK(binom_tail(1, 5, 0.0) == 0.0);
  CHECK(binom_tail(11, 10, 0.5) == 0.0);
  CHECK(binom_tail(10, 10, 1.0) == 1.0);
  CHECK_THROWS_AS(binom_tail(1, 5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(binom_tail(1, 5, -0.1), std::invalid_argument);
}

TEST_CASE("binom_tail short cases against direct arithmetic") {
  // 1 - 0.9^10 - 10*0.1*0.9^9
  const double expected = 1.0 - std::pow(0.9, 10) - 10 * 0.1 * std::pow(0.9, 9);
  CHECK(binom_tail(2, 10, 0.1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(binom_tail(2, 10, 0.1) == doctest::Approx(0.2639).epsilon(1e-3));
}

TEST_CASE("binom_tail matches the exact rational oracle") {
  const std::pair<int, int> probs[] = {{1, 10}, {1, 4}, {1, 2}, {9, 10}};
  for (int n = 0; n <= 30; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (auto [a, b] : probs) {
        const long double exact = exact_binom_tail(k, n, a, b);
        const double got = binom_tail(k, n, static_cast<double>(a) / b);
        const long double rel =
            fabsl(static_cast<long double>(got) - exact) /
            (exact > 0.0L ? exact : 1.0L);
        CHECK(rel <= 1e-9L);
      }
    }
  }
}

TEST_CASE("binom_tail monotone in k and p") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_below(300));
    const std::int64_t k = static_cast<std::int64_t>(rng.next_below(n + 1));
    const double p = rng.next_double();
    const double p2 = p + (1.0 - p) * rng.next_double();
    CHECK(binom_tail(k + 1, n, p) <= binom_tail(k, n, p) + 1e-12);
    CHECK(binom_tail(k, n, p) <= binom_tail(k, n, p2) + 1e-12);
  }
}

TEST_CASE("binom_tail complements the pmf sum") {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_below(1000));
    const std::int64_t k = static_cast<std::int64_t>(rng.next_below(n + 1));
    const double p = 0.001 + 0.998 * rng.next_double();
    double lower = 0.0;
    for (std::int64_t j = 0; j < k; ++j) lower += binom_pmf(j, n, p);
    CHECK(binom_tail(k, n, p) + lower == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("expected_edges") {
  CHECK(expected_edges(50, 50, 0.003457) == doctest::Approx(8.6425).epsilon(1e-12));
  CHECK(expected_edges(50, 50, 0.003457) == doctest::Approx(8.64).epsilon(1e-3));
  CHECK(expected_edges(0, 10, 0.5) == 0.0);
  CHECK(expected_edges(10, 10, 1.0) == 100.0);
}

TEST_CASE("association_pvalue") {
  // exhaustive enumeration over 4 potential edges: 1 - q^4 - 4 p q^3
  CHECK(association_pvalue(2, 2, 2, 0.5) == doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(association_pvalue(7, 9, 0, 0.123) == 1.0);
  CHECK(association_pvalue(1, 1, 1, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(association_pvalue(2, 2, 5, 0.5), std::invalid_argument);
}

TEST_CASE("cluster_significance") {
  {
    const std::int64_t ones[] = {2};
    const double p[] = {0.5};
    CHECK(cluster_significance(ones, 2, p) == doctest::Approx(0.75).epsilon(1e-12));
  }
  {
    const std::int64_t ones[] = {0, 0, 0};
    const double p[] = {0.2, 0.5, 0.9};
    CHECK(cluster_significance(ones, 5, p) == 0.0);
  }
  {
    const std::int64_t ones[] = {1, 1};
    const double p[] = {0.5, 0.5};
    CHECK(cluster_significance(ones, 1, p) == doctest::Approx(0.75).epsilon(1e-12));
  }
  {
    const std::int64_t ones[] = {1};
    const double p[] = {0.5, 0.5};
    CHECK_THROWS_AS(cluster_significance(ones, 1, p), std::invalid_argument);
  }
}

TEST_CASE("cluster_significance monotone in each ones count") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t size = 2 + static_cast<std::int64_t>(rng.next_below(40));
    std::vector<std::int64_t> ones(3);
    std::vector<double> p(3);
    for (int i = 0; i < 3; ++i) {
      ones[i] = static_cast<std::int64_t>(rng.next_below(size));
      p[i] = 0.05 + 0.9 * rng.next_double();
    }
    const double base = cluster_significance(ones, size, p);
    auto bumped = ones;
    const int which = static_cast<int>(rng.next_below(3));
    bumped[which] += 1;
    CHECK(cluster_significance(bumped, size, p) >= base - 1e-12);
  }
}

TEST_CASE("normal quantile and cdf") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.99) == doctest::Approx(2.3263478740408408).epsilon(1e-9));
  CHECK(normal_quantile(0.01) == doctest::Approx(-2.3263478740408408).epsilon(1e-9));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
  // Round trip across the range.
  for (double u = 0.0005; u < 1.0; u += 0.0101) {
    CHECK(normal_cdf(normal_quantile(u)) == doctest::Approx(u).epsilon(1e-8));
  }
}

TEST_CASE("prune_threshold worked example") {
  const PruneBound b = prune_threshold(2500, 0.003457, 0.01);
  CHECK_FALSE(b.vacuous);
  CHECK(b.threshold == doctest::Approx(11.4).epsilon(0.02));  // within +-0.2
}

TEST_CASE("prune_threshold vacuous when the correction swallows the level") {
  const PruneBound b = prune_threshold(1, 0.5, 0.9);
  CHECK(b.vacuous);
  CHECK(b.threshold == 0.0);
}

TEST_CASE("prune_threshold sound on the fixed example") {
  const PruneBound b = prune_threshold(100, 0.1, 0.01);
  REQUIRE_FALSE(b.vacuous);
  for (std::int64_t k = 0; static_cast<double>(k) < b.threshold; ++k) {
    CHECK(binom_tail(k, 100, 0.1) >= 0.01);
  }
}

TEST_CASE("prune_threshold sound on random configurations") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_below(10000));
    const double p = 1e-4 + 0.05 * rng.next_double();
    const double alpha = (trial % 2) ? 0.01 : 0.05;
    const PruneBound b = prune_threshold(n, p, alpha);
    if (b.vacuous) continue;
    for (std::int64_t k = 0; static_cast<double>(k) < b.threshold; ++k) {
      REQUIRE(binom_tail(k, n, p) >= alpha);
    }
  }
}

TEST_CASE("is_significant uses a strict boundary") {
  CHECK(is_significant(0.005, 0.01));
  CHECK_FALSE(is_significant(0.01, 0.01));
  CHECK_FALSE(is_significant(1.0, 0.01));
}
