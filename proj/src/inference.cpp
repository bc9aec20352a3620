#include "sphangle/inference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sphangle/angles.hpp"
#include "sphangle/limit_laws.hpp"
#include "sphangle/special.hpp"
#include "sphangle/sphere.hpp"

namespace sphangle {

double packing_critical_value(double alpha, std::size_t p) {
  return fixed_p_extreme_quantile(alpha, p);
}

TestResult packing_test(const DataMatrix& data, double alpha, const KernelOptions& kernel) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("significance level alpha must lie in (0, 1)");
  }
  if (data.n < 2 || data.p < 2) {
    throw std::invalid_argument("packing test needs n >= 2 and p >= 2");
  }
  const PointSet points = normalize_rows(data);
  const AngleExtremes ex = pairwise_extremes(points, kernel);

  TestResult result;
  result.n = data.n;
  result.p = data.p;
  result.alpha = alpha;
  result.statistic =
      std::pow(static_cast<double>(data.n), 2.0 / (static_cast<double>(data.p) - 1.0)) *
      ex.theta_min;
  result.critical_value = packing_critical_value(alpha, data.p);
  result.p_value = fixed_p_extreme_cdf(result.statistic, data.p);
  result.reject = result.statistic <= result.critical_value;
  return result;
}

SpuriousThreshold spurious_correlation_threshold(std::size_t n, std::size_t p) {
  if (n < 3) {
    throw std::invalid_argument("spurious threshold requires n >= 3, got n=" +
                                std::to_string(n));
  }
  if (p < 1) {
    throw std::invalid_argument("spurious threshold requires p >= 1");
  }
  const double nd = static_cast<double>(n), pd = static_cast<double>(p);
  const double radicand =
      1.0 - std::pow(nd, -4.0 / pd) * std::pow(std::log(nd), 1.0 / pd);
  if (radicand < 0.0) return {0.0, true};
  return {std::sqrt(radicand), false};
}

double variance_bias_factor(double theta_min) {
  if (!(theta_min >= 0.0 && theta_min <= M_PI)) {
    throw std::invalid_argument("theta_min must lie in [0, pi]");
  }
  const double s = std::sin(theta_min);
  return s * s;
}

double concentration_bound(double epsilon, std::size_t p) {
  if (!(epsilon > 0.0 && epsilon < M_PI / 2.0)) {
    throw std::invalid_argument("epsilon must lie in (0, pi/2)");
  }
  if (p < 2) {
    throw std::invalid_argument("concentration bound requires p >= 2");
  }
  const double bound = M_PI * angle_norm_constant(p) *
                       std::exp((static_cast<double>(p) - 2.0) * std::log(std::cos(epsilon)));
  return std::fmin(1.0, bound);
}

}  // namespace sphangle
