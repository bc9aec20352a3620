#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sphangle {

/// n unit vectors in R^p, one per row (row-major). Every row has Euclidean
/// norm 1 to within 1e-12; n >= 2, p >= 2.
struct PointSet {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> coords;  // n*p, row-major

  std::span<const double> row(std::size_t i) const {
    return {coords.data() + i * p, p};
  }
  std::span<double> row(std::size_t i) { return {coords.data() + i * p, p}; }
};

/// n raw observations in R^p (unnormalized). Entries must be finite and no
/// row may be all zero.
struct DataMatrix {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> values;  // n*p, row-major

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * p, p};
  }
  std::span<double> row(std::size_t i) { return {values.data() + i * p, p}; }
};

}  // namespace sphangle
