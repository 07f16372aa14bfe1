#pragma once

// Scalar special functions: Gamma and the one- and two-parameter
// Mittag-Leffler functions over complex arguments.

#include <complex>

namespace fracio::specfun {

using complex = std::complex<double>;

/// Order parameters of E_{alpha,beta}. `depth` is the number of algebraic
/// terms kept by the asymptotic expansion.
struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
  int depth = 5;
};

enum class Regime { exponential, algebraic };

struct ArgSector {
  double theta = 0.0;
  Regime classification = Regime::exponential;
};

/// Which evaluation route produced a Mittag-Leffler value.
enum class MLRoute { zero, series, extended_series, asymptotic };

struct MLEvaluation {
  complex value;
  MLRoute route = MLRoute::series;
};

inline constexpr int kDefaultAsymptoticDepth = 5;

/// Gamma(x) for real x. Throws PoleError at 0, -1, -2, ...
[[nodiscard]] double gamma(double x);

/// 1/Gamma(x), defined everywhere (zero at the poles of Gamma).
[[nodiscard]] double rgamma(double x);

/// E_alpha(z) = sum_k z^k / Gamma(alpha k + 1), 0 < alpha <= 2.
[[nodiscard]] complex ml_one(double alpha, complex z);

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta), beta > 0.
/// ml_two(a, 1, z) and ml_one(a, z) share one code path.
[[nodiscard]] complex ml_two(double alpha, double beta, complex z);

/// Same as ml_two but also reports which route produced the value.
[[nodiscard]] MLEvaluation ml_evaluate(double alpha, double beta, complex z);

/// Threshold angle separating exponential and algebraic behaviour:
/// the midpoint of (pi alpha / 2, min(pi, pi alpha)).
[[nodiscard]] double sector_threshold(double alpha);

[[nodiscard]] ArgSector classify_arg_sector(double alpha, complex lam);

/// Smallest |lam t^alpha|^(1/alpha) accepted by ml_asymptotic.
inline constexpr double kAsymptoticMinScale = 7.0;

/// m-term large-t expansion of E_{alpha,beta}(lam t^alpha): the exponential
/// branch (1/alpha) z^((1-beta)/alpha) exp(z^(1/alpha)) is included when
/// |arg lam| <= theta, followed by -sum_{k=1..m} z^-k / Gamma(beta - alpha k).
/// Throws RegimeError when |lam t^alpha|^(1/alpha) < kAsymptoticMinScale.
[[nodiscard]] complex ml_asymptotic(const MLParams& params, complex lam,
                                    double t, int m);

}  // namespace fracio::specfun
