#include "sphangle/limit_laws.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sphangle/angles.hpp"
#include "sphangle/quadrature.hpp"
#include "sphangle/special.hpp"

namespace sphangle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(std::size_t p, std::size_t min_p) {
  if (p < min_p) {
    throw std::invalid_argument("dimension p=" + std::to_string(p) + " too small (need p >= " +
                                std::to_string(min_p) + ")");
  }
}

void require_unit_interval(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1), got " + std::to_string(u));
  }
}

double sub_super_pivot_cdf(double y, double rate) {
  const double e = std::exp(0.5 * y);
  if (!std::isfinite(e)) return 1.0;
  return -std::expm1(-rate * e);
}

}  // namespace

double angle_density(double theta, std::size_t p) {
  require_dimension(p, 2);
  if (theta < 0.0 || theta > M_PI) return 0.0;
  const double c = angle_norm_constant(p);
  if (p == 2) return c;  // uniform on [0, pi]
  const double s = std::sin(theta);
  if (s <= 0.0) return 0.0;
  return c * std::exp((static_cast<double>(p) - 2.0) * std::log(s));
}

double normalized_angle_density(double t, std::size_t p) {
  require_dimension(p, 3);
  const double scale = std::sqrt(static_cast<double>(p) - 2.0);
  const double theta = M_PI / 2.0 - t / scale;
  if (theta < 0.0 || theta > M_PI) return 0.0;
  return angle_density(theta, p) / scale;
}

double cosine_density(double rho, std::size_t p) {
  require_dimension(p, 2);
  if (!(std::fabs(rho) < 1.0)) return 0.0;
  const double c = angle_norm_constant(p);
  if (p == 3) return c;  // exponent (p-3)/2 vanishes
  return c * std::exp((static_cast<double>(p) - 3.0) / 2.0 * std::log1p(-rho * rho));
}

double angle_cdf(double theta, std::size_t p) {
  require_dimension(p, 2);
  if (theta <= 0.0) return 0.0;
  if (theta >= M_PI) return 1.0;
  // Symmetry about pi/2 keeps the quadrature interval inside [0, pi/2].
  if (theta > M_PI / 2.0) return 1.0 - angle_cdf(M_PI - theta, p);
  // Integrate the upper piece [theta, pi/2] so the mode sits on a panel
  // endpoint: at large p the density is a sqrt(1/p)-wide spike at pi/2 that
  // an interior sample grid could miss entirely.
  const double upper =
      integrate([p](double x) { return angle_density(x, p); }, theta, M_PI / 2.0, 5e-12);
  return std::fmin(std::fmax(0.5 - upper, 0.0), 1.0);
}

double normalized_angle_cdf(double t, std::size_t p) {
  require_dimension(p, 3);
  // P(sqrt(p-2)(pi/2 - Theta) <= t) = P(Theta >= pi/2 - t/sqrt(p-2)).
  const double theta = M_PI / 2.0 - t / std::sqrt(static_cast<double>(p) - 2.0);
  return 1.0 - angle_cdf(theta, p);
}

double cosine_cdf(double rho, std::size_t p) {
  require_dimension(p, 2);
  if (rho <= -1.0) return 0.0;
  if (rho >= 1.0) return 1.0;
  // P(cos Theta <= rho) = P(Theta >= arccos rho); the arccos substitution
  // also removes the p = 2 endpoint singularity of g.
  return 1.0 - angle_cdf(std::acos(rho), p);
}

double extreme_rate_constant(std::size_t p) {
  require_dimension(p, 2);
  const double pd = static_cast<double>(p);
  return gamma_ratio(pd / 2.0, (pd + 1.0) / 2.0) / (4.0 * std::sqrt(M_PI));
}

double fixed_p_extreme_cdf(double x, std::size_t p) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-extreme_rate_constant(p) * std::pow(x, static_cast<double>(p) - 1.0));
}

double fixed_p_extreme_pdf(double x, std::size_t p) {
  const double k = extreme_rate_constant(p);
  if (x < 0.0) return 0.0;
  if (x == 0.0) return p == 2 ? k : 0.0;
  const double pm1 = static_cast<double>(p) - 1.0;
  const double exponent = k * std::pow(x, pm1);
  if (!(exponent < 746.0)) return 0.0;  // exp underflows first; avoids inf * 0
  return k * pm1 * std::pow(x, pm1 - 1.0) * std::exp(-exponent);
}

double fixed_p_extreme_quantile(double u, std::size_t p) {
  require_unit_interval(u);
  const double k = extreme_rate_constant(p);
  return std::pow(-std::log1p(-u) / k, 1.0 / (static_cast<double>(p) - 1.0));
}

double one_minus_mn_rate_constant(std::size_t p) {
  require_dimension(p, 2);
  const double pd = static_cast<double>(p);
  return std::exp2((pd - 5.0) / 2.0) / std::sqrt(M_PI) *
         gamma_ratio(pd / 2.0, (pd + 1.0) / 2.0);
}

double one_minus_mn_cdf(double x, std::size_t p) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-one_minus_mn_rate_constant(p) *
                     std::pow(x, (static_cast<double>(p) - 1.0) / 2.0));
}

double sum_law_cdf(double z, std::size_t p) {
  require_dimension(p, 2);
  const double k = extreme_rate_constant(p);
  // Truncate where the density factor drops below 1e-14: exp(-37) ~ 8.5e-17.
  const double y_up = std::pow(37.0 / k, 1.0 / (static_cast<double>(p) - 1.0));
  const double y_lo = std::fmax(0.0, -z);  // F(y+z) vanishes below -z
  if (y_lo >= y_up) return 0.0;
  const double v = integrate(
      [z, p](double y) { return fixed_p_extreme_cdf(y + z, p) * fixed_p_extreme_pdf(y, p); },
      y_lo, y_up, 1e-9);
  return std::fmin(std::fmax(v, 0.0), 1.0);
}

double subexp_pivot_cdf(double y) {
  return sub_super_pivot_cdf(y, 0.25 / std::sqrt(2.0 * M_PI));
}

double exp_regime_rate_constant(double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("exponential-regime beta must be positive");
  }
  return std::sqrt(beta / (8.0 * M_PI * -std::expm1(-4.0 * beta)));
}

double exp_regime_pivot_cdf(double y, double beta) {
  return sub_super_pivot_cdf(y + 8.0 * beta, exp_regime_rate_constant(beta));
}

double superexp_pivot_cdf(double y) {
  return sub_super_pivot_cdf(y, 0.5 / std::sqrt(2.0 * M_PI));
}

double cos_square_pivot_cdf(double y, double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("cos^2-pivot alpha must be nonnegative");
  }
  const double c = 0.25 / std::sqrt(2.0 * M_PI);
  const double e = std::exp(-0.5 * (y + 8.0 * alpha * alpha));
  if (!std::isfinite(e)) return 0.0;
  return std::exp(-c * e);
}

RegimeClass regime_classify(std::size_t n, std::size_t p) {
  if (n < 2 || p < 2) {
    throw std::invalid_argument("regime_classify needs n >= 2 and p >= 2");
  }
  const double r = std::log(static_cast<double>(n)) / static_cast<double>(p);
  Regime tag = Regime::kExponential;
  if (r < 0.05) tag = Regime::kSubExponential;
  if (r > 5.0) tag = Regime::kSuperExponential;
  return {tag, r};
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::kSubExponential: return "sub-exponential";
    case Regime::kExponential: return "exponential";
    case Regime::kSuperExponential: return "super-exponential";
  }
  return "unknown";
}

double pivot_transform(double theta, const PivotSpec& spec) {
  const double n = static_cast<double>(spec.n);
  const double p = static_cast<double>(spec.p);
  if (spec.n < 2 || spec.p < 2) {
    throw std::invalid_argument("pivot_transform needs n >= 2 and p >= 2");
  }
  const bool needs_loglog = spec.kind != PivotKind::kSuperExponential;
  if (needs_loglog && spec.n <= 2) {
    throw std::invalid_argument("pivot undefined: log log n requires n > e");
  }
  if (spec.kind == PivotKind::kCosSquare) {
    const double c = std::cos(theta);
    return p * c * c - 4.0 * std::log(n) + std::log(std::log(n));
  }
  const double s = std::sin(theta);
  const double log_sin = s > 0.0 ? std::log(s) : -kInf;
  switch (spec.kind) {
    case PivotKind::kSubExponential:
    case PivotKind::kExponential:
      return 2.0 * p * log_sin + 4.0 * std::log(n) - std::log(std::log(n));
    case PivotKind::kSuperExponential:
      return 2.0 * p * log_sin + 4.0 * p / (p - 1.0) * std::log(n) - std::log(p);
    default:
      break;
  }
  throw std::logic_error("unreachable pivot kind");
}

double pivot_transform(const AngleExtremes& extremes, const PivotSpec& spec,
                       WhichExtreme which) {
  const double theta = which == WhichExtreme::kMin ? extremes.theta_min : extremes.theta_max;
  return pivot_transform(theta, spec);
}

std::pair<double, double> exp_regime_limit_angle(double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("exponential-regime beta must be positive");
  }
  const double theta_min = std::acos(std::sqrt(-std::expm1(-4.0 * beta)));
  return {theta_min, M_PI - theta_min};
}

// ---------------------------------------------------------------------------
// LimitLaw
// ---------------------------------------------------------------------------

LimitLaw LimitLaw::angle(std::size_t p) {
  require_dimension(p, 2);
  return {Kind::kAngleDensity, p, 0.0, 0.0};
}
LimitLaw LimitLaw::normalized_angle(std::size_t p) {
  require_dimension(p, 3);
  return {Kind::kNormalizedAngleDensity, p, 0.0, 0.0};
}
LimitLaw LimitLaw::cosine(std::size_t p) {
  require_dimension(p, 2);
  return {Kind::kCosineDensity, p, 0.0, 0.0};
}
LimitLaw LimitLaw::fixed_p_extreme(std::size_t p) {
  require_dimension(p, 2);
  return {Kind::kFixedPExtreme, p, 0.0, 0.0};
}
LimitLaw LimitLaw::one_minus_mn(std::size_t p) {
  require_dimension(p, 2);
  return {Kind::kOneMinusMn, p, 0.0, 0.0};
}
LimitLaw LimitLaw::sum_law(std::size_t p) {
  require_dimension(p, 2);
  return {Kind::kSumLaw, p, 0.0, 0.0};
}
LimitLaw LimitLaw::subexp_pivot() { return {Kind::kSubexpPivot, 0, 0.0, 0.0}; }
LimitLaw LimitLaw::exp_regime_pivot(double beta) {
  exp_regime_rate_constant(beta);  // validates beta
  return {Kind::kExpRegimePivot, 0, beta, 0.0};
}
LimitLaw LimitLaw::superexp_pivot() { return {Kind::kSuperexpPivot, 0, 0.0, 0.0}; }
LimitLaw LimitLaw::cos_square_pivot(double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("cos^2-pivot alpha must be nonnegative");
  }
  return {Kind::kCosSquarePivot, 0, 0.0, alpha};
}

LimitLaw::Kind LimitLaw::parse_kind(const std::string& name) {
  if (name == "angle-density") return Kind::kAngleDensity;
  if (name == "normalized-angle-density") return Kind::kNormalizedAngleDensity;
  if (name == "cosine-density") return Kind::kCosineDensity;
  if (name == "fixed-p-extreme") return Kind::kFixedPExtreme;
  if (name == "one-minus-mn") return Kind::kOneMinusMn;
  if (name == "sum-law") return Kind::kSumLaw;
  if (name == "subexp-pivot") return Kind::kSubexpPivot;
  if (name == "exp-regime-pivot") return Kind::kExpRegimePivot;
  if (name == "superexp-pivot") return Kind::kSuperexpPivot;
  if (name == "cos2-pivot") return Kind::kCosSquarePivot;
  throw std::invalid_argument("unknown law \"" + name + "\"");
}

LimitLaw LimitLaw::make(Kind kind, std::size_t p, double beta, double alpha) {
  switch (kind) {
    case Kind::kAngleDensity: return angle(p);
    case Kind::kNormalizedAngleDensity: return normalized_angle(p);
    case Kind::kCosineDensity: return cosine(p);
    case Kind::kFixedPExtreme: return fixed_p_extreme(p);
    case Kind::kOneMinusMn: return one_minus_mn(p);
    case Kind::kSumLaw: return sum_law(p);
    case Kind::kSubexpPivot: return subexp_pivot();
    case Kind::kExpRegimePivot: return exp_regime_pivot(beta);
    case Kind::kSuperexpPivot: return superexp_pivot();
    case Kind::kCosSquarePivot: return cos_square_pivot(alpha);
  }
  throw std::logic_error("unreachable law kind");
}

double LimitLaw::pdf(double x) const {
  switch (kind_) {
    case Kind::kAngleDensity: return angle_density(x, p_);
    case Kind::kNormalizedAngleDensity: return normalized_angle_density(x, p_);
    case Kind::kCosineDensity: return cosine_density(x, p_);
    case Kind::kFixedPExtreme: return fixed_p_extreme_pdf(x, p_);
    case Kind::kOneMinusMn: {
      if (x < 0.0) return 0.0;
      const double k1 = one_minus_mn_rate_constant(p_);
      const double e = (static_cast<double>(p_) - 1.0) / 2.0;
      if (x == 0.0) return p_ == 3 ? k1 : 0.0;
      const double exponent = k1 * std::pow(x, e);
      if (!(exponent < 746.0)) return 0.0;
      return k1 * e * std::pow(x, e - 1.0) * std::exp(-exponent);
    }
    case Kind::kSumLaw: {
      // d/dz of the convolution: int f(y+z) f(y) dy.
      const double k = extreme_rate_constant(p_);
      const double y_up = std::pow(37.0 / k, 1.0 / (static_cast<double>(p_) - 1.0));
      const double y_lo = std::fmax(0.0, -x);
      if (y_lo >= y_up) return 0.0;
      const std::size_t p = p_;
      return integrate(
          [x, p](double y) {
            return fixed_p_extreme_pdf(y + x, p) * fixed_p_extreme_pdf(y, p);
          },
          y_lo, y_up, 1e-10);
    }
    case Kind::kSubexpPivot:
    case Kind::kSuperexpPivot:
    case Kind::kExpRegimePivot: {
      double rate = 0.25 / std::sqrt(2.0 * M_PI), shift = 0.0;
      if (kind_ == Kind::kSuperexpPivot) rate = 0.5 / std::sqrt(2.0 * M_PI);
      if (kind_ == Kind::kExpRegimePivot) {
        rate = exp_regime_rate_constant(beta_);
        shift = 8.0 * beta_;
      }
      const double e = std::exp(0.5 * (x + shift));
      if (!std::isfinite(e)) return 0.0;
      return 0.5 * rate * e * std::exp(-rate * e);
    }
    case Kind::kCosSquarePivot: {
      const double c = 0.25 / std::sqrt(2.0 * M_PI);
      const double e = std::exp(-0.5 * (x + 8.0 * alpha_ * alpha_));
      if (!std::isfinite(e)) return 0.0;
      return cos_square_pivot_cdf(x, alpha_) * 0.5 * c * e;
    }
  }
  throw std::logic_error("unreachable law kind");
}

double LimitLaw::cdf(double x) const {
  switch (kind_) {
    case Kind::kAngleDensity: return angle_cdf(x, p_);
    case Kind::kNormalizedAngleDensity: return normalized_angle_cdf(x, p_);
    case Kind::kCosineDensity: return cosine_cdf(x, p_);
    case Kind::kFixedPExtreme: return fixed_p_extreme_cdf(x, p_);
    case Kind::kOneMinusMn: return one_minus_mn_cdf(x, p_);
    case Kind::kSumLaw: return sum_law_cdf(x, p_);
    case Kind::kSubexpPivot: return subexp_pivot_cdf(x);
    case Kind::kExpRegimePivot: return exp_regime_pivot_cdf(x, beta_);
    case Kind::kSuperexpPivot: return superexp_pivot_cdf(x);
    case Kind::kCosSquarePivot: return cos_square_pivot_cdf(x, alpha_);
  }
  throw std::logic_error("unreachable law kind");
}

namespace {

// Safeguarded bisection + Newton inversion of a monotone CDF on [lo, hi].
double invert_cdf(const LimitLaw& law, double u, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double diff = law.cdf(x) - u;
    if (std::fabs(diff) <= 1e-12 || hi - lo <= 1e-14 * (1.0 + std::fabs(x))) break;
    if (diff < 0.0) lo = x;
    else hi = x;
    const double d = law.pdf(x);
    double next = d > 0.0 ? x - diff / d : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

}  // namespace

double LimitLaw::quantile(double u) const {
  require_unit_interval(u);
  const double pd = static_cast<double>(p_);
  switch (kind_) {
    case Kind::kFixedPExtreme: return fixed_p_extreme_quantile(u, p_);
    case Kind::kOneMinusMn:
      return std::pow(-std::log1p(-u) / one_minus_mn_rate_constant(p_), 2.0 / (pd - 1.0));
    case Kind::kSubexpPivot:
      return 2.0 * std::log(-std::log1p(-u) * 4.0 * std::sqrt(2.0 * M_PI));
    case Kind::kSuperexpPivot:
      return 2.0 * std::log(-std::log1p(-u) * 2.0 * std::sqrt(2.0 * M_PI));
    case Kind::kExpRegimePivot:
      return 2.0 * std::log(-std::log1p(-u) / exp_regime_rate_constant(beta_)) - 8.0 * beta_;
    case Kind::kCosSquarePivot:
      return -2.0 * std::log(-std::log(u) * 4.0 * std::sqrt(2.0 * M_PI)) -
             8.0 * alpha_ * alpha_;
    case Kind::kAngleDensity: return invert_cdf(*this, u, 0.0, M_PI);
    case Kind::kNormalizedAngleDensity: {
      const double s = std::sqrt(pd - 2.0) * M_PI / 2.0;
      return invert_cdf(*this, u, -s, s);
    }
    case Kind::kCosineDensity: return invert_cdf(*this, u, -1.0, 1.0);
    case Kind::kSumLaw: {
      double lo = -1.0, hi = 1.0;
      while (cdf(lo) > u) lo *= 2.0;
      while (cdf(hi) < u) hi *= 2.0;
      return invert_cdf(*this, u, lo, hi);
    }
  }
  throw std::logic_error("unreachable law kind");
}

}  // namespace sphangle
