#include "sphangle/sphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphangle {

namespace {

void check_sizes(std::size_t n, std::size_t p) {
  if (n < 2 || p < 2) {
    throw std::invalid_argument("invalid dimensions: need n >= 2 and p >= 2, got n=" +
                                std::to_string(n) + " p=" + std::to_string(p));
  }
}

}  // namespace

PointSet sample_uniform_sphere(std::size_t n, std::size_t p, const SeedSpec& seed) {
  check_sizes(n, p);
  Rng rng(seed);
  PointSet points{n, p, std::vector<double>(n * p)};
  for (std::size_t i = 0; i < n; ++i) {
    auto row = points.row(i);
    double sq = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      row[k] = rng.normal();
      sq += row[k] * row[k];
    }
    // A Gaussian vector is zero with probability 0; sq > 0 always in practice.
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t k = 0; k < p; ++k) row[k] *= inv;
  }
  return points;
}

DataMatrix sample_dgp(int dist_id, std::size_t n, std::size_t p, const SeedSpec& seed) {
  if (n < 1 || p < 1) {
    throw std::invalid_argument("sample_dgp needs n >= 1 and p >= 1");
  }
  if (dist_id < 0 || dist_id > 5) {
    throw std::invalid_argument("unknown distribution id " + std::to_string(dist_id) +
                                " (expected 0..5)");
  }
  Rng rng(seed);
  DataMatrix data{n, p, std::vector<double>(n * p)};
  for (std::size_t i = 0; i < n; ++i) {
    auto row = data.row(i);
    switch (dist_id) {
      case 0:
        for (std::size_t k = 0; k < p; ++k) row[k] = rng.normal();
        break;
      case 1:
        for (std::size_t k = 0; k < p; ++k) row[k] = rng.uniform(-1.0, 1.0);
        break;
      case 2:
        for (std::size_t k = 0; k < p; ++k) row[k] = rng.uniform();
        break;
      case 3:
      case 4: {
        const double rho = dist_id == 3 ? 0.5 : 0.9;
        const double a = std::sqrt(rho), b = std::sqrt(1.0 - rho);
        const double z0 = rng.normal();
        for (std::size_t k = 0; k < p; ++k) row[k] = a * z0 + b * rng.normal();
        break;
      }
      case 5:
        for (std::size_t k = 0; k < p; ++k) {
          const double sign = rng.uniform() < 2.0 / 3.0 ? 1.0 : -1.0;
          row[k] = sign * rng.exponential();
        }
        break;
    }
  }
  return data;
}

PointSet normalize_rows(const DataMatrix& data) {
  PointSet points{data.n, data.p, std::vector<double>(data.n * data.p)};
  for (std::size_t i = 0; i < data.n; ++i) {
    auto in = data.row(i);
    double sq = 0.0;
    for (double v : in) sq += v * v;
    if (sq == 0.0) {
      throw std::invalid_argument("cannot normalize zero row at index " + std::to_string(i));
    }
    const double inv = 1.0 / std::sqrt(sq);
    auto out = points.row(i);
    for (std::size_t k = 0; k < data.p; ++k) out[k] = in[k] * inv;
  }
  return points;
}

}  // namespace sphangle
