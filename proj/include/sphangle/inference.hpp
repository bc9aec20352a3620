#pragma once

#include <cstddef>

#include "sphangle/angles.hpp"
#include "sphangle/matrix.hpp"

namespace sphangle {

/// Outcome of the packing sphericity test: reject H0 (spherical symmetry)
/// when n^{2/(p-1)} Theta_min <= c_alpha. The p-value is the left-tail
/// probability F(statistic; p) under the fixed-p extreme law, dual to the
/// rejection region.
struct TestResult {
  double statistic = 0.0;       // n^{2/(p-1)} * Theta_min
  double critical_value = 0.0;  // c_alpha = (-log(1-alpha)/K)^{1/(p-1)}
  double p_value = 0.0;
  double alpha = 0.0;
  bool reject = false;
  std::size_t n = 0;
  std::size_t p = 0;
};

/// Runs the packing test on raw data; rows are normalized onto the sphere
/// internally (zero rows propagate as errors). Requires n >= 2, p >= 2 and
/// alpha in (0, 1). kernel controls the pairwise-extremes pass (the Monte
/// Carlo harness pins it to one thread and parallelizes over replicates).
TestResult packing_test(const DataMatrix& data, double alpha,
                        const KernelOptions& kernel = {});

/// Critical value c_alpha of the test at dimension p.
double packing_critical_value(double alpha, std::size_t p);

/// sqrt(1 - n^{-4/p} (log n)^{1/p}): absolute sample correlations below this
/// level are achievable purely by chance. Requires n >= 3 (so log n > 1) and
/// p >= 1. A negative radicand reports value 0 with degenerate = true.
struct SpuriousThreshold {
  double value = 0.0;
  bool degenerate = false;
};
SpuriousThreshold spurious_correlation_threshold(std::size_t n, std::size_t p);

/// 1 - cos^2(Theta_min) = sin^2(Theta_min): the factor by which the residual
/// variance is underestimated when a spurious variable is recruited.
/// Requires theta_min in [0, pi].
double variance_bias_factor(double theta_min);

/// Explicit concentration bound for one pairwise angle:
/// P(|Theta - pi/2| >= eps) <= min(1, pi C_p cos^{p-2}(eps)),
/// with C_p the angle-density constant. Requires eps in (0, pi/2), p >= 2.
double concentration_bound(double epsilon, std::size_t p);

}  // namespace sphangle
