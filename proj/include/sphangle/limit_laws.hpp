#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace sphangle {

struct AngleExtremes;

// ---------------------------------------------------------------------------
// Closed-form densities of a single pairwise angle / cosine.
// ---------------------------------------------------------------------------

/// Density h(theta) = C_p sin^{p-2}(theta) on [0, pi] of one pairwise angle;
/// also the limit of the empirical angle law for fixed p. Returns 0 outside
/// the support. Powers are computed as exp((p-2) log sin theta) so large p
/// cannot underflow inconsistently.
double angle_density(double theta, std::size_t p);

/// Density of sqrt(p-2) (pi/2 - Theta): h_p(t) = h(pi/2 - t/sqrt(p-2)) /
/// sqrt(p-2). Support |t| <= sqrt(p-2) pi/2; approaches the standard normal
/// density as p grows. Requires p >= 3.
double normalized_angle_density(double t, std::size_t p);

/// Density g(rho) = C_p (1-rho^2)^{(p-3)/2} of one pairwise cosine on
/// (-1, 1). Integrable singularity at |rho| = 1 when p = 2; returns 0 for
/// |rho| >= 1.
double cosine_density(double rho, std::size_t p);

/// CDFs of the three densities above. The cosine and normalized-angle CDFs
/// reduce exactly to the angle CDF by change of variables, which also removes
/// the p = 2 endpoint singularity of g.
double angle_cdf(double theta, std::size_t p);
double normalized_angle_cdf(double t, std::size_t p);
double cosine_cdf(double rho, std::size_t p);

// ---------------------------------------------------------------------------
// Fixed-p extreme laws.
// ---------------------------------------------------------------------------

/// K = Gamma(p/2) / (4 sqrt(pi) Gamma((p+1)/2)); rate constant of the limit
/// law of n^{2/(p-1)} Theta_min (and of n^{2/(p-1)} (pi - Theta_max)).
double extreme_rate_constant(std::size_t p);

/// F(x) = 1 - exp(-K x^{p-1}) for x >= 0.
double fixed_p_extreme_cdf(double x, std::size_t p);
double fixed_p_extreme_pdf(double x, std::size_t p);
/// Quantile (-log(1-u)/K)^{1/(p-1)}; requires u in (0, 1).
double fixed_p_extreme_quantile(double u, std::size_t p);

/// K1 = 2^{(p-5)/2} Gamma(p/2) / (sqrt(pi) Gamma((p+1)/2)); rate constant of
/// the limit of n^{4/(p-1)} (1 - M_n). Satisfies K = 2^{(1-p)/2} K1.
double one_minus_mn_rate_constant(std::size_t p);

/// F1(x) = 1 - exp(-K1 x^{(p-1)/2}) for x >= 0.
double one_minus_mn_cdf(double x, std::size_t p);

/// CDF of X - Y where X, Y are i.i.d. with CDF F above: the limit of
/// n^{2/(p-1)} (Theta_max + Theta_min - pi). Computed by adaptive quadrature
/// of int F(y+z) dF(y) truncated where the density falls below 1e-14;
/// absolute error target 1e-8.
double sum_law_cdf(double z, std::size_t p);

// ---------------------------------------------------------------------------
// Growing-p pivot laws.
// ---------------------------------------------------------------------------

/// Sub-exponential regime (log n << p): CDF 1 - exp(-K e^{y/2}) with
/// K = 1/(4 sqrt(2 pi)) of the pivot 2p log sin Theta_min + 4 log n -
/// log log n.
double subexp_pivot_cdf(double y);

/// K(beta) = sqrt(beta / (8 pi (1 - e^{-4 beta}))); beta > 0. Tends to the
/// sub-exponential constant 1/(4 sqrt(2 pi)) as beta -> 0.
double exp_regime_rate_constant(double beta);

/// Exponential regime (log n / p -> beta): CDF 1 - exp(-K(beta)
/// e^{(y+8 beta)/2}) of the same pivot.
double exp_regime_pivot_cdf(double y, double beta);

/// Super-exponential regime (log n >> p): CDF 1 - exp(-K e^{y/2}) with
/// K = 1/(2 sqrt(2 pi)) of the pivot 2p log sin Theta_min +
/// (4p/(p-1)) log n - log p. Equals the sub-exponential CDF shifted by
/// 2 log 2.
double superexp_pivot_cdf(double y);

/// Gumbel-type CDF exp(-(1/(4 sqrt(2 pi))) e^{-(y+8 alpha^2)/2}) of the pivot
/// p cos^2 Theta_min - 4 log n + log log n, where alpha = lim log n / sqrt p.
/// Requires alpha >= 0.
double cos_square_pivot_cdf(double y, double alpha);

// ---------------------------------------------------------------------------
// Regimes and pivot transforms.
// ---------------------------------------------------------------------------

enum class Regime { kSubExponential, kExponential, kSuperExponential };

/// Suggested regime at finite (n, p). The thresholds (r < 0.05 sub-exp,
/// r <= 5 exponential, else super-exp) are advisory; the exact ratio
/// r = log(n)/p is always reported alongside.
struct RegimeClass {
  Regime tag;
  double ratio;
};
RegimeClass regime_classify(std::size_t n, std::size_t p);
std::string regime_name(Regime r);

enum class PivotKind { kSubExponential, kExponential, kSuperExponential, kCosSquare };
enum class WhichExtreme { kMin, kMax };

struct PivotSpec {
  PivotKind kind = PivotKind::kSubExponential;
  std::size_t n = 0;
  std::size_t p = 0;
  double beta = 0.0;   // exponential regime parameter
  double alpha = 0.0;  // cos^2-pivot parameter
};

/// The pivot value for one observed extreme angle. Theta_max enters through
/// sin Theta_max = sin(pi - Theta_max) and cos^2 Theta_max =
/// cos^2(pi - Theta_max), so the same formulas serve both extremes.
/// Returns -infinity when the log-sin pivots hit Theta in {0, pi}; throws
/// when log log n is required but n <= 2.
double pivot_transform(double theta, const PivotSpec& spec);
double pivot_transform(const AngleExtremes& extremes, const PivotSpec& spec,
                       WhichExtreme which);

/// Limits in probability of (Theta_min, Theta_max) in the exponential regime:
/// (arccos sqrt(1 - e^{-4 beta}), pi - arccos sqrt(1 - e^{-4 beta})).
std::pair<double, double> exp_regime_limit_angle(double beta);

// ---------------------------------------------------------------------------
// Uniform distribution-object view over all limit laws (CLI, KS checks).
// ---------------------------------------------------------------------------

class LimitLaw {
 public:
  enum class Kind {
    kAngleDensity,
    kNormalizedAngleDensity,
    kCosineDensity,
    kFixedPExtreme,
    kOneMinusMn,
    kSumLaw,
    kSubexpPivot,
    kExpRegimePivot,
    kSuperexpPivot,
    kCosSquarePivot,
  };

  static LimitLaw angle(std::size_t p);
  static LimitLaw normalized_angle(std::size_t p);
  static LimitLaw cosine(std::size_t p);
  static LimitLaw fixed_p_extreme(std::size_t p);
  static LimitLaw one_minus_mn(std::size_t p);
  static LimitLaw sum_law(std::size_t p);
  static LimitLaw subexp_pivot();
  static LimitLaw exp_regime_pivot(double beta);
  static LimitLaw superexp_pivot();
  static LimitLaw cos_square_pivot(double alpha);

  /// Parses the CLI spelling, e.g. "angle-density" or "fixed-p-extreme".
  static Kind parse_kind(const std::string& name);
  static LimitLaw make(Kind kind, std::size_t p, double beta, double alpha);

  Kind kind() const { return kind_; }
  double pdf(double x) const;
  double cdf(double x) const;
  /// Inverse CDF; closed form where available, otherwise safeguarded
  /// bisection + Newton to 1e-10 in probability. Requires u in (0, 1).
  double quantile(double u) const;

 private:
  LimitLaw(Kind kind, std::size_t p, double beta, double alpha)
      : kind_(kind), p_(p), beta_(beta), alpha_(alpha) {}

  Kind kind_;
  std::size_t p_;
  double beta_;
  double alpha_;
};

}  // namespace sphangle
