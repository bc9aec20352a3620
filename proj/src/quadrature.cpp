#include "sphangle/quadrature.hpp"

#include <cmath>

namespace sphangle {

namespace {

// QUADPACK QK15 nodes and weights (positive half; node 7 is the midpoint).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kKronrodW[7] * fc;
  double gauss = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double lo = f(c - h * kNodes[i]);
    const double hi = f(c + h * kNodes[i]);
    kron += kKronrodW[i] * (lo + hi);
    if (i % 2 == 1) gauss += kGaussW[i / 2] * (lo + hi);
  }
  kron *= h;
  gauss *= h;
  return {kron, std::fabs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth) {
  const PanelResult r = gk15(f, a, b);
  if (r.err <= tol || depth >= 48 || b - a < 1e-14 * (std::fabs(a) + std::fabs(b) + 1.0)) {
    return r.kronrod;
  }
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, 0);
}

}  // namespace sphangle
