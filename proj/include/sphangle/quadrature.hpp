#pragma once

#include <functional>

namespace sphangle {

/// Adaptive panel integration of f over [a, b] with a Gauss-Kronrod 7/15
/// rule: panels whose Kronrod-Gauss discrepancy exceeds their share of the
/// tolerance are bisected. Targets absolute error abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

}  // namespace sphangle
