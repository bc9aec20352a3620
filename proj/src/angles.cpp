#include "sphangle/angles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphangle/parallel.hpp"

namespace sphangle {

namespace {

struct Tile {
  std::size_t i0, i1, j0, j1;  // row ranges [i0,i1) x [j0,j1), i-block <= j-block
};

std::vector<Tile> make_tiles(std::size_t n, std::size_t block) {
  std::vector<Tile> tiles;
  for (std::size_t i0 = 0; i0 < n; i0 += block) {
    const std::size_t i1 = std::min(n, i0 + block);
    for (std::size_t j0 = i0; j0 < n; j0 += block) {
      tiles.push_back({i0, i1, j0, std::min(n, j0 + block)});
    }
  }
  return tiles;
}

inline double row_dot(const double* a, const double* b, std::size_t p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p; ++k) acc += a[k] * b[k];
  return acc;
}

// Visits every pair (i, j), i < j, of one tile. visit(i, j, rho) receives the
// clamped cosine. Pairs are grouped four at a time over j; each dot product
// still accumulates sequentially in column order, so results do not depend on
// the grouping.
template <typename Visit>
void scan_tile(const PointSet& pts, const Tile& t, Visit&& visit) {
  const std::size_t p = pts.p;
  const double* base = pts.coords.data();
  for (std::size_t i = t.i0; i < t.i1; ++i) {
    const double* ri = base + i * p;
    std::size_t j = std::max(t.j0, i + 1);
    for (; j + 4 <= t.j1; j += 4) {
      const double* r0 = base + j * p;
      const double* r1 = r0 + p;
      const double* r2 = r1 + p;
      const double* r3 = r2 + p;
      double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        const double x = ri[k];
        a0 += x * r0[k];
        a1 += x * r1[k];
        a2 += x * r2[k];
        a3 += x * r3[k];
      }
      visit(i, j, std::clamp(a0, -1.0, 1.0));
      visit(i, j + 1, std::clamp(a1, -1.0, 1.0));
      visit(i, j + 2, std::clamp(a2, -1.0, 1.0));
      visit(i, j + 3, std::clamp(a3, -1.0, 1.0));
    }
    for (; j < t.j1; ++j) {
      visit(i, j, std::clamp(row_dot(ri, base + j * p, p), -1.0, 1.0));
    }
  }
}

void check_points(const PointSet& pts) {
  if (pts.n < 2 || pts.p < 2) {
    throw std::invalid_argument("pairwise kernel needs n >= 2 and p >= 2");
  }
  if (pts.coords.size() != pts.n * pts.p) {
    throw std::invalid_argument("PointSet storage does not match n*p");
  }
}

}  // namespace

AngleSet pairwise_angles(const PointSet& points, const KernelOptions& options) {
  check_points(points);
  const std::size_t n = points.n;
  AngleSet out{n, points.p, std::vector<double>(n * (n - 1) / 2),
               std::vector<double>(n * (n - 1) / 2)};
  const auto tiles = make_tiles(n, std::max<std::size_t>(1, options.block_rows));
  parallel_for(tiles.size(), options.threads, [&](std::size_t t) {
    scan_tile(points, tiles[t], [&](std::size_t i, std::size_t j, double rho) {
      const std::size_t k = AngleSet::pair_index(i, j, n);
      out.cosines[k] = rho;
      out.angles[k] = std::acos(rho);
    });
  });
  return out;
}

AngleExtremes pairwise_extremes(const PointSet& points, const KernelOptions& options) {
  check_points(points);
  const auto tiles = make_tiles(points.n, std::max<std::size_t>(1, options.block_rows));
  std::vector<double> tile_max(tiles.size()), tile_min(tiles.size());
  parallel_for(tiles.size(), options.threads, [&](std::size_t t) {
    double hi = -2.0, lo = 2.0;
    scan_tile(points, tiles[t], [&](std::size_t, std::size_t, double rho) {
      hi = std::max(hi, rho);
      lo = std::min(lo, rho);
    });
    tile_max[t] = hi;
    tile_min[t] = lo;
  });
  // Min/max reductions are order-independent; fold tile results in order
  // anyway for clarity.
  double hi = -2.0, lo = 2.0;
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    hi = std::max(hi, tile_max[t]);
    lo = std::min(lo, tile_min[t]);
  }
  AngleExtremes ex;
  ex.m_n = hi;
  ex.l_np = std::max(std::fabs(hi), std::fabs(lo));
  ex.theta_min = std::acos(hi);
  ex.theta_max = std::acos(lo);
  return ex;
}

AngleExtremes extremes(const AngleSet& angles) {
  if (angles.angles.empty()) {
    throw std::invalid_argument("extremes of an empty angle set");
  }
  AngleExtremes ex;
  ex.theta_min = *std::min_element(angles.angles.begin(), angles.angles.end());
  ex.theta_max = *std::max_element(angles.angles.begin(), angles.angles.end());
  double hi = -2.0, l = 0.0;
  for (double rho : angles.cosines) {
    hi = std::max(hi, rho);
    l = std::max(l, std::fabs(rho));
  }
  ex.m_n = hi;
  ex.l_np = l;
  return ex;
}

std::size_t near_orthogonal_count(const AngleSet& angles, double gamma) {
  if (gamma < 0.0) {
    throw std::invalid_argument("near_orthogonal_count needs gamma >= 0");
  }
  std::size_t count = 0;
  for (double theta : angles.angles) {
    if (std::fabs(M_PI / 2.0 - theta) <= gamma) ++count;
  }
  return count;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> samples, Kind kind)
    : sorted_(std::move(samples)), kind_(kind) {
  if (sorted_.empty()) {
    throw std::invalid_argument("empirical measure of an empty sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalMeasure::ecdf(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalMeasure empirical_measure(const AngleSet& angles) {
  return {angles.angles, EmpiricalMeasure::Kind::kRawAngle};
}

EmpiricalMeasure normalized_empirical(const AngleSet& angles) {
  if (angles.p < 3) {
    throw std::invalid_argument("normalized empirical measure needs p >= 3");
  }
  const double scale = std::sqrt(static_cast<double>(angles.p) - 2.0);
  std::vector<double> values(angles.angles.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = scale * (M_PI / 2.0 - angles.angles[k]);
  }
  return {std::move(values), EmpiricalMeasure::Kind::kNormalized};
}

}  // namespace sphangle
