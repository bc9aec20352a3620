#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sphangle/inference.hpp"
#include "sphangle/limit_laws.hpp"
#include "sphangle/quadrature.hpp"
#include "sphangle/sphere.hpp"

using namespace sphangle;

TEST_CASE("critical value and p-value duality") {
  CHECK(packing_critical_value(0.05, 2) ==
        doctest::Approx(-2.0 * M_PI * std::log(0.95)).epsilon(1e-14));
  CHECK(packing_critical_value(0.05, 2) ==
        doctest::Approx(0.32228527365269466).epsilon(1e-14));
  for (double alpha : {0.01, 0.05, 0.1}) {
    for (std::size_t p = 2; p <= 10; ++p) {
      CHECK(std::fabs(fixed_p_extreme_cdf(packing_critical_value(alpha, p), p) - alpha) <=
            1e-12);
    }
  }
}

TEST_CASE("packing test on orthonormal rows accepts") {
  DataMatrix eye{3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
  const TestResult r = packing_test(eye, 0.05);
  // Theta_min = pi/2, so the statistic is 3^{2/2} * pi/2 = 3 pi/2.
  CHECK(r.statistic == doctest::Approx(3.0 * M_PI / 2.0).epsilon(1e-12));
  const double want_p = 1.0 - std::exp(-std::pow(3.0 * M_PI / 2.0, 2) / 8.0);
  CHECK(r.p_value == doctest::Approx(want_p).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.9377018).epsilon(1e-6));
  CHECK_FALSE(r.reject);
  CHECK(r.n == 3);
  CHECK(r.p == 3);
}

TEST_CASE("packing test on duplicated rows rejects at any level") {
  DataMatrix dup{3, 2, {0.5, 0.5, 0.5, 0.5, -1.0, 0.2}};
  for (double alpha : {0.001, 0.05, 0.5}) {
    const TestResult r = packing_test(dup, alpha);
    CHECK(r.statistic <= 3e-4);
    CHECK(r.p_value <= 1e-4);
    CHECK(r.reject);
  }
}

TEST_CASE("packing test consistency of the three decision forms") {
  for (int rep = 0; rep < 30; ++rep) {
    const DataMatrix data = sample_dgp(rep % 6, 10, 3, {777, static_cast<std::uint64_t>(rep)});
    const TestResult r = packing_test(data, 0.05);
    CHECK(r.reject == (r.statistic <= r.critical_value));
    CHECK(r.reject == (r.p_value <= r.alpha + 1e-12));
    CHECK(r.p_value == doctest::Approx(fixed_p_extreme_cdf(r.statistic, 3)).epsilon(1e-15));
  }
}

TEST_CASE("packing test input validation") {
  DataMatrix ok{2, 2, {1, 0, 0, 1}};
  CHECK_THROWS_AS(packing_test(ok, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(packing_test(ok, 1.0), std::invalid_argument);
  DataMatrix zero{2, 2, {0, 0, 1, 0}};
  CHECK_THROWS_WITH_AS(packing_test(zero, 0.05), doctest::Contains("index 0"),
                       std::invalid_argument);
  DataMatrix one_row{1, 2, {1, 0}};
  CHECK_THROWS_AS(packing_test(one_row, 0.05), std::invalid_argument);
}

TEST_CASE("spurious correlation threshold") {
  CHECK(spurious_correlation_threshold(50, 30).value ==
        doctest::Approx(0.61548364847064100).epsilon(1e-12));
  CHECK(std::fabs(spurious_correlation_threshold(50, 30).value - 0.615) <= 1e-3);
  CHECK(spurious_correlation_threshold(100, 10).value ==
        doctest::Approx(0.90297315573253963).epsilon(1e-12));
  // Decreasing in p at fixed n.
  double prev = 1.0;
  for (std::size_t p = 2; p <= 100; ++p) {
    const double v = spurious_correlation_threshold(50, p).value;
    CHECK(v < prev);
    prev = v;
  }
  // p -> infinity drives the threshold to zero.
  CHECK(spurious_correlation_threshold(50, 1000000).value < 4e-3);
  CHECK_FALSE(spurious_correlation_threshold(50, 30).degenerate);
  CHECK_THROWS_AS(spurious_correlation_threshold(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(spurious_correlation_threshold(10, 0), std::invalid_argument);
}

TEST_CASE("variance bias factor") {
  CHECK(variance_bias_factor(M_PI / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(variance_bias_factor(0.0) == 0.0);
  CHECK(variance_bias_factor(M_PI / 3) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(variance_bias_factor(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(variance_bias_factor(M_PI + 0.1), std::invalid_argument);
}

TEST_CASE("concentration bound dominates the exact tail") {
  CHECK(concentration_bound(0.5, 2) == doctest::Approx(1.0).epsilon(1e-14));  // vacuous at p = 2
  for (std::size_t p : {5, 20, 100}) {
    for (double eps : {0.1, 0.3, 0.6}) {
      const double tail =
          2.0 * integrate([p](double t) { return angle_density(t, p); }, M_PI / 2 + eps,
                          M_PI, 1e-11);
      CHECK(concentration_bound(eps, p) >= tail);
    }
  }
  // The sqrt(c log p / p) window shrinks the bound as p grows (c = 2).
  const auto window_bound = [](std::size_t p) {
    const double pd = static_cast<double>(p);
    return concentration_bound(std::sqrt(2.0 * std::log(pd) / pd), p);
  };
  CHECK(window_bound(10000) < window_bound(1000));
  CHECK_THROWS_AS(concentration_bound(0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(concentration_bound(M_PI / 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(concentration_bound(0.3, 1), std::invalid_argument);
}
