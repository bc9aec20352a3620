#include "sphangle/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphangle {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's tabulation; relative
// series error ~2e-16).
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2 pi)/2

double lanczos_log_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("log_gamma requires x > 0, got " + std::to_string(x));
  }
  if (x >= 0.5) return lanczos_log_gamma(x);
  // Reflection Gamma(x) Gamma(1-x) = pi / sin(pi x) for x in (0, 0.5).
  return std::log(M_PI / std::sin(M_PI * x)) - lanczos_log_gamma(1.0 - x);
}

double gamma_ratio(double a, double b) { return std::exp(log_gamma(a) - log_gamma(b)); }

double angle_norm_constant(std::size_t p) {
  const double pd = static_cast<double>(p);
  return gamma_ratio(pd / 2.0, (pd - 1.0) / 2.0) / std::sqrt(M_PI);
}

}  // namespace sphangle
