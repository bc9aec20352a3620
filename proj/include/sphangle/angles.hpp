#pragma once

#include <cstddef>
#include <vector>

#include "sphangle/matrix.hpp"

namespace sphangle {

/// All n(n-1)/2 pairwise cosines and angles of a point set, in lexicographic
/// (i < j) order. Cosines are clamped to [-1, 1] before arccos, so angles lie
/// in [0, pi]; cosines are retained because M_n, L_{n,p} and the pivot
/// transforms need them at full precision.
struct AngleSet {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> cosines;
  std::vector<double> angles;

  std::size_t pair_count() const { return n * (n - 1) / 2; }
  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }
};

/// Extremes of one angle set: Theta_min, Theta_max, the maximum cosine
/// M_n = cos Theta_min and the coherence L_{n,p} = max |cos Theta_ij|.
struct AngleExtremes {
  double theta_min = 0.0;
  double theta_max = 0.0;
  double m_n = 0.0;
  double l_np = 0.0;
};

/// Tuning for the pairwise kernel. Rows are processed in block_rows x
/// block_rows tiles (default 64) so both operand rows stream from cache;
/// tiles are distributed over `threads` workers (0 = all cores). Results are
/// identical for every block size and worker count: each pair's dot product
/// accumulates sequentially in column order.
struct KernelOptions {
  std::size_t block_rows = 64;
  unsigned threads = 0;
};

/// The full pairwise angle/cosine set of a PointSet.
AngleSet pairwise_angles(const PointSet& points, const KernelOptions& options = {});

/// Extremes computed blockwise without materializing the O(n^2) angle set;
/// used by the Monte Carlo studies where only extremes matter.
AngleExtremes pairwise_extremes(const PointSet& points, const KernelOptions& options = {});

/// Exact scan of a stored angle set. Throws on an empty set.
AngleExtremes extremes(const AngleSet& angles);

/// #{(i,j) : |pi/2 - Theta_ij| <= gamma}; gamma must be nonnegative.
std::size_t near_orthogonal_count(const AngleSet& angles, double gamma);

/// Sorted sample with a right-continuous ECDF.
class EmpiricalMeasure {
 public:
  enum class Kind { kRawAngle, kNormalized };

  EmpiricalMeasure(std::vector<double> samples, Kind kind);

  /// P_n(X <= x); right-continuous, nondecreasing, in [0, 1].
  double ecdf(double x) const;
  const std::vector<double>& sorted_samples() const { return sorted_; }
  Kind kind() const { return kind_; }

 private:
  std::vector<double> sorted_;
  Kind kind_;
};

/// mu_n: the raw-angle empirical measure over all pairs.
EmpiricalMeasure empirical_measure(const AngleSet& angles);

/// mu_{n,p}: the measure of sqrt(p-2) (pi/2 - Theta_ij). Requires p >= 3.
EmpiricalMeasure normalized_empirical(const AngleSet& angles);

}  // namespace sphangle
