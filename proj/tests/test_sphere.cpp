#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "sphangle/quadrature.hpp"
#include "sphangle/sphere.hpp"

using namespace sphangle;

namespace {

double row_norm(std::span<const double> row) {
  double sq = 0.0;
  for (double v : row) sq += v * v;
  return std::sqrt(sq);
}

double column_mean(const DataMatrix& m, std::size_t col) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) s += m.values[i * m.p + col];
  return s / static_cast<double>(m.n);
}

double column_correlation(const DataMatrix& m, std::size_t a, std::size_t b) {
  const double ma = column_mean(m, a), mb = column_mean(m, b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    const double da = m.values[i * m.p + a] - ma;
    const double db = m.values[i * m.p + b] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("uniform sphere rows are unit vectors") {
  const PointSet pts = sample_uniform_sphere(2, 2, {11, 0});
  for (std::size_t i = 0; i < pts.n; ++i) {
    CHECK(std::fabs(row_norm(pts.row(i)) - 1.0) <= 1e-12);
  }
  const PointSet big = sample_uniform_sphere(500, 17, {12, 3});
  double worst = 0.0;
  for (std::size_t i = 0; i < big.n; ++i) {
    worst = std::max(worst, std::fabs(row_norm(big.row(i)) - 1.0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("sampling is deterministic per seed and distinct across streams") {
  const PointSet a = sample_uniform_sphere(50, 3, {99, 4});
  const PointSet b = sample_uniform_sphere(50, 3, {99, 4});
  CHECK(a.coords == b.coords);  // bit-identical
  const PointSet c = sample_uniform_sphere(50, 3, {99, 5});
  CHECK(a.coords != c.coords);
  const DataMatrix d1 = sample_dgp(5, 30, 4, {7, 0});
  const DataMatrix d2 = sample_dgp(5, 30, 4, {7, 0});
  CHECK(d1.values == d2.values);
}

TEST_CASE("uniform sphere coordinate moments at p = 3") {
  const std::size_t n = 10000;
  const PointSet pts = sample_uniform_sphere(n, 3, {2024, 0});
  double mean3 = 0.0, second = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean3 += pts.coords[i * 3 + 2];
    second += pts.coords[i * 3 + 2] * pts.coords[i * 3 + 2];
  }
  mean3 /= static_cast<double>(n);
  second /= static_cast<double>(n);
  CHECK(std::fabs(mean3) <= 0.03);

  // Independent oracle: rejection sampling from the cube, normalized.
  Rng rng({555, 0});
  double oracle_second = 0.0;
  std::size_t kept = 0;
  while (kept < n) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    const double z = rng.uniform(-1.0, 1.0);
    const double sq = x * x + y * y + z * z;
    if (sq > 1.0 || sq == 0.0) continue;
    oracle_second += z * z / sq;
    ++kept;
  }
  oracle_second /= static_cast<double>(n);
  CHECK(std::fabs(second - 1.0 / 3.0) < 0.01);
  CHECK(std::fabs(oracle_second - 1.0 / 3.0) < 0.01);
  CHECK(std::fabs(second - oracle_second) < 0.02);
}

TEST_CASE("uniformity invariants at n = 1e5, p = 3") {
  const std::size_t n = 100000;
  const PointSet pts = sample_uniform_sphere(n, 3, {31337, 1});
  for (std::size_t col = 0; col < 3; ++col) {
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = pts.coords[i * 3 + col];
      mean += v;
      second += v * v;
    }
    mean /= static_cast<double>(n);
    second /= static_cast<double>(n);
    CHECK(std::fabs(mean) <= 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(second - 1.0 / 3.0) <= 0.01);
  }
}

TEST_CASE("dgp 0..2 basic ranges") {
  const DataMatrix d0 = sample_dgp(0, 4, 2, {1, 0});
  for (double v : d0.values) CHECK(std::isfinite(v));
  const DataMatrix d1 = sample_dgp(1, 1000, 3, {1, 0});
  for (double v : d1.values) {
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
  }
  const DataMatrix d2 = sample_dgp(2, 1000, 3, {1, 0});
  for (double v : d2.values) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("equicorrelated normals hit the target correlation") {
  const DataMatrix d4 = sample_dgp(4, 100000, 2, {42, 0});
  CHECK(std::fabs(column_correlation(d4, 0, 1) - 0.9) <= 0.01);

  const DataMatrix d3 = sample_dgp(3, 100000, 5, {43, 0});
  const DataMatrix d4b = sample_dgp(4, 100000, 5, {44, 0});
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      CHECK(std::fabs(column_correlation(d3, a, b) - 0.5) <= 0.02);
      CHECK(std::fabs(column_correlation(d4b, a, b) - 0.9) <= 0.02);
    }
  }
}

TEST_CASE("mixture dgp mean matches the density integral") {
  const DataMatrix d5 = sample_dgp(5, 100000, 1, {77, 0});
  CHECK(std::fabs(column_mean(d5, 0) - 1.0 / 3.0) <= 0.02);

  // Oracle: numerically integrate x * density of the two-sided mixture.
  const double mean = integrate([](double x) { return x * (2.0 / 3.0) * std::exp(-x); }, 0.0,
                                60.0, 1e-12) +
                      integrate([](double x) { return x * (1.0 / 3.0) * std::exp(x); }, -60.0,
                                0.0, 1e-12);
  CHECK(mean == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("normalize_rows on small cases") {
  DataMatrix m{1, 2, {3.0, 4.0}};
  const PointSet unit = normalize_rows(m);
  CHECK(unit.coords[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(unit.coords[1] == doctest::Approx(0.8).epsilon(1e-15));

  DataMatrix eye{2, 2, {1.0, 0.0, 0.0, 1.0}};
  const PointSet same = normalize_rows(eye);
  CHECK(same.coords == eye.values);

  DataMatrix zero{2, 2, {1.0, 0.0, 0.0, 0.0}};
  CHECK_THROWS_WITH_AS(normalize_rows(zero), doctest::Contains("index 1"),
                       std::invalid_argument);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(sample_uniform_sphere(1, 3, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_uniform_sphere(3, 1, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_dgp(6, 5, 2, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_dgp(-1, 5, 2, {0, 0}), std::invalid_argument);
}
