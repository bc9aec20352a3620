#pragma once

#include "sphangle/matrix.hpp"
#include "sphangle/seed.hpp"

namespace sphangle {

/// n i.i.d. uniform points on S^{p-1}, sampled as normalized standard
/// Gaussian vectors. Deterministic for a fixed (n, p, seed).
/// Throws std::invalid_argument for n < 2 or p < 2.
PointSet sample_uniform_sphere(std::size_t n, std::size_t p, const SeedSpec& seed);

/// The six data-generating processes of the power study:
///   0  i.i.d. standard normal components
///   1  i.i.d. uniform on [-1, 1]
///   2  i.i.d. uniform on [0, 1]
///   3  equicorrelated standard normal, pairwise correlation 0.5
///   4  equicorrelated standard normal, pairwise correlation 0.9
///   5  i.i.d. mixture (2/3) Exp(1) + (1/3) (-Exp(1))
/// Distributions 3/4 use the one-factor form X_j = sqrt(rho) Z0 +
/// sqrt(1-rho) Z_j, which hits the target correlation exactly in O(p) per
/// row. Throws std::invalid_argument for an unknown dist_id.
DataMatrix sample_dgp(int dist_id, std::size_t n, std::size_t p, const SeedSpec& seed);

/// Projects every row onto the unit sphere. A zero row is an error (not a
/// silent drop: losing rows would corrupt n in downstream statistics);
/// the exception message names the offending row index.
PointSet normalize_rows(const DataMatrix& data);

}  // namespace sphangle
