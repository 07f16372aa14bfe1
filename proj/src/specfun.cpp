#include "fracio/specfun.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numbers>
#include <vector>

#include "fracio/errors.hpp"
#include "mpfr_value.hpp"

namespace fracio::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative accuracy targets for accepting a route.
constexpr double kAsymptoticAcceptance = 1e-15;
constexpr double kSeriesStop = 1e-16;
constexpr double kMaxDoubleLoss = 1e2;
constexpr int kDoubleSeriesTerms = 500;
constexpr double kAsymptoticTryScale = 3.0;
constexpr mpfr_prec_t kMaxPrecision = 1 << 15;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi x) with argument reduction, exact zero at integers.
double sin_pi(double x) {
  if (x == std::floor(x)) return 0.0;
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r <= -1.0) r += 2.0;
  return std::sin(kPi * r);
}

double lgamma_positive(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// log|1/Gamma(x)| and its sign; sign == 0 marks a pole of Gamma.
struct LogRgamma {
  double log_abs = 0.0;
  int sign = 0;
};

LogRgamma log_rgamma(double x) {
  if (is_nonpositive_integer(x)) return {-kInf, 0};
  if (x > 0.0) return {-lgamma_positive(x), 1};
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  const double s = sin_pi(x);
  return {std::log(std::abs(s)) + lgamma_positive(1.0 - x) - std::log(kPi),
          s > 0.0 ? 1 : -1};
}

complex exp_safe(complex w) {
  if (w.imag() == 0.0) return {std::exp(w.real()), 0.0};
  return std::polar(std::exp(w.real()), w.imag());
}

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + compensation; }
};

struct DoubleSeries {
  complex value;
  double max_term = 0.0;
  bool converged = false;
};

DoubleSeries series_double(double alpha, double beta, complex z) {
  const double log_abs = std::log(std::abs(z));
  const double angle = std::arg(z);
  NeumaierSum re;
  NeumaierSum im;
  DoubleSeries out;
  double previous = kInf;
  for (int k = 0; k < kDoubleSeriesTerms; ++k) {
    const double mag_log = k * log_abs - lgamma_positive(alpha * k + beta);
    if (mag_log > 700.0) return out;
    const complex term = std::polar(std::exp(mag_log), k * angle);
    re.add(term.real());
    im.add(term.imag());
    const double size = std::abs(term);
    out.max_term = std::max(out.max_term, size);
    const double sum_size = std::abs(complex(re.value(), im.value()));
    if (k > 0 && size <= kSeriesStop * sum_size && size < previous) {
      out.value = {re.value(), im.value()};
      out.converged = true;
      return out;
    }
    previous = size;
  }
  return out;
}

// Table of 1/Gamma(alpha k + beta) in extended precision, shared by all
// evaluations with the same (alpha, beta) on the calling thread.
struct RgammaTable {
  double alpha;
  double beta;
  mpfr_prec_t precision;
  std::vector<detail::MpfrValue> values;

  const detail::MpfrValue& at(std::size_t k) {
    while (values.size() <= k) {
      const auto index = static_cast<unsigned long>(values.size());
      detail::MpfrValue x(precision);
      mpfr_set_d(x.get(), alpha, MPFR_RNDN);
      mpfr_mul_ui(x.get(), x.get(), index, MPFR_RNDN);
      mpfr_add_d(x.get(), x.get(), beta, MPFR_RNDN);
      mpfr_gamma(x.get(), x.get(), MPFR_RNDN);
      mpfr_ui_div(x.get(), 1, x.get(), MPFR_RNDN);
      values.push_back(std::move(x));
    }
    return values[k];
  }
};

RgammaTable& rgamma_table(double alpha, double beta, mpfr_prec_t precision) {
  thread_local std::list<RgammaTable> cache;
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    if (it->alpha == alpha && it->beta == beta && it->precision >= precision) {
      cache.splice(cache.begin(), cache, it);
      return cache.front();
    }
  }
  const mpfr_prec_t rounded = ((precision + 63) / 64) * 64;
  cache.push_front(RgammaTable{alpha, beta, rounded, {}});
  if (cache.size() > 8) cache.pop_back();
  return cache.front();
}

struct ExtendedSeries {
  complex value;
  long max_log2 = std::numeric_limits<long>::min();
  bool converged = false;
};

long log2_magnitude(const detail::MpfrValue& re, const detail::MpfrValue& im) {
  long e = std::numeric_limits<long>::min();
  if (!mpfr_zero_p(re.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(re.get())));
  if (!mpfr_zero_p(im.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(im.get())));
  return e;
}

ExtendedSeries series_extended_once(double alpha, double beta, complex z,
                                    mpfr_prec_t precision, std::size_t cap) {
  using detail::MpfrValue;
  RgammaTable& table = rgamma_table(alpha, beta, precision);
  MpfrValue zr(precision), zi(precision), pr(precision), pi(precision);
  MpfrValue sr(precision), si(precision), tr(precision), ti(precision);
  MpfrValue scratch(precision);
  mpfr_set_d(zr.get(), z.real(), MPFR_RNDN);
  mpfr_set_d(zi.get(), z.imag(), MPFR_RNDN);
  mpfr_set_ui(pr.get(), 1, MPFR_RNDN);
  mpfr_set_zero(pi.get(), 1);
  mpfr_set_zero(sr.get(), 1);
  mpfr_set_zero(si.get(), 1);

  ExtendedSeries out;
  long previous = std::numeric_limits<long>::max();
  const long stop_bits = 62;
  for (std::size_t k = 0; k < cap; ++k) {
    const MpfrValue& rg = table.at(k);
    mpfr_mul(tr.get(), pr.get(), rg.get(), MPFR_RNDN);
    mpfr_mul(ti.get(), pi.get(), rg.get(), MPFR_RNDN);
    mpfr_add(sr.get(), sr.get(), tr.get(), MPFR_RNDN);
    mpfr_add(si.get(), si.get(), ti.get(), MPFR_RNDN);

    const long term_log2 = log2_magnitude(tr, ti);
    out.max_log2 = std::max(out.max_log2, term_log2);
    const long sum_log2 = log2_magnitude(sr, si);
    if (k > 0 && term_log2 < previous &&
        (term_log2 == std::numeric_limits<long>::min() ||
         term_log2 < sum_log2 - stop_bits)) {
      out.value = {sr.to_double(), si.to_double()};
      out.converged = true;
      return out;
    }
    previous = term_log2;

    // (pr + i pi) *= (zr + i zi)
    mpfr_mul(scratch.get(), pr.get(), zr.get(), MPFR_RNDN);
    mpfr_mul(tr.get(), pi.get(), zi.get(), MPFR_RNDN);
    mpfr_sub(scratch.get(), scratch.get(), tr.get(), MPFR_RNDN);
    mpfr_mul(ti.get(), pr.get(), zi.get(), MPFR_RNDN);
    mpfr_mul(tr.get(), pi.get(), zr.get(), MPFR_RNDN);
    mpfr_add(pi.get(), ti.get(), tr.get(), MPFR_RNDN);
    mpfr_swap(pr.get(), scratch.get());
  }
  return out;
}

complex series_extended(double alpha, double beta, complex z, double rho) {
  const auto cap = static_cast<std::size_t>(std::ceil((5.0 * rho + 200.0) / alpha)) + 50;
  auto precision = static_cast<mpfr_prec_t>(96 + std::ceil(rho * std::numbers::log2e));
  for (int attempt = 0; attempt < 6; ++attempt) {
    precision = std::min(precision, kMaxPrecision);
    const ExtendedSeries s = series_extended_once(alpha, beta, z, precision, cap);
    if (!s.converged) break;
    const double size = std::abs(s.value);
    const double loss =
        size > 0.0 ? static_cast<double>(s.max_log2) - std::log2(size)
                   : static_cast<double>(precision);
    if (loss + 64.0 <= static_cast<double>(precision)) return s.value;
    if (precision == kMaxPrecision) break;
    precision = static_cast<mpfr_prec_t>(std::ceil(loss)) + 96;
  }
  throw ConvergenceError("Mittag-Leffler series did not converge for alpha = " +
                         std::to_string(alpha) + ", |z| = " + std::to_string(std::abs(z)));
}

struct AsymptoticResult {
  complex value;
  double error = kInf;
};

// Algebraic tail -sum_{j>=1} z^-j / Gamma(beta - alpha j), truncated where the
// terms stop decreasing or fall below working precision. `neglected` receives
// the size of the last term kept when the sum was cut short.
struct AlgebraicTail {
  complex sum;
  double neglected = 0.0;
};

AlgebraicTail algebraic_tail(double alpha, double beta, complex z, int max_terms,
                             double scale_hint) {
  const complex log_z = std::log(z);
  AlgebraicTail out;
  double previous = kInf;
  for (int j = 1; j <= max_terms; ++j) {
    const LogRgamma rg = log_rgamma(beta - alpha * j);
    if (rg.sign == 0) continue;
    const complex term =
        -static_cast<double>(rg.sign) * exp_safe(-static_cast<double>(j) * log_z + rg.log_abs);
    const double size = std::abs(term);
    if (size > previous) {
      out.neglected = previous;
      return out;
    }
    out.sum += term;
    previous = size;
    if (size <= 1e-17 * std::max(std::abs(out.sum), scale_hint)) return out;
  }
  out.neglected = previous == kInf ? 0.0 : previous;
  return out;
}

// Exponential contributions (1/alpha) w^(1-beta) e^w from every branch
// w = z^(1/alpha) e^(2 pi i k / alpha) with -pi < arg w <= pi.
complex exponential_branches(double alpha, double beta, complex z, double rho) {
  complex sum = 0.0;
  const double angle = std::arg(z);
  for (int k = -1; k <= 1; ++k) {
    const double phi = (angle + 2.0 * kPi * k) / alpha;
    if (!(phi > -kPi && phi <= kPi)) continue;
    const complex w = std::polar(rho, phi);
    const complex log_w(std::log(rho), phi);
    sum += exp_safe((1.0 - beta) * log_w + w) / alpha;
  }
  return sum;
}

AsymptoticResult asymptotic_full(double alpha, double beta, complex z, double rho) {
  // For alpha in {1, 2} with integer beta the Hankel remainder vanishes, every
  // tail term past beta / alpha hits a pole of Gamma and the expansion is exact.
  const bool exact = (alpha == 1.0 || alpha == 2.0) && beta == std::floor(beta);
  const complex expo = exponential_branches(alpha, beta, z, rho);
  AsymptoticResult out;
  if (exact) {
    const int terms = static_cast<int>(std::ceil(beta / alpha));
    out.value = expo + algebraic_tail(alpha, beta, z, terms, 0.0).sum;
    out.error = 0.0;
    return out;
  }
  const AlgebraicTail tail = algebraic_tail(alpha, beta, z, 400, std::abs(expo));
  out.value = expo + tail.sum;
  const double recessive =
      10.0 * std::exp(-rho) * std::max(1.0, std::pow(rho, 1.0 - beta)) / alpha;
  out.error = tail.neglected + recessive;
  return out;
}

MLEvaluation ml_evaluate_upper(double alpha, double beta, complex z);

void check_orders(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("Mittag-Leffler order alpha must lie in (0, 2], got " +
                      std::to_string(alpha));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Mittag-Leffler parameter beta must be positive, got " +
                      std::to_string(beta));
  }
}

}  // namespace

double gamma(double x) {
  if (is_nonpositive_integer(x)) throw PoleError(x);
  return std::tgamma(x);
}

double rgamma(double x) {
  const LogRgamma rg = log_rgamma(x);
  if (rg.sign == 0) return 0.0;
  return rg.sign * std::exp(rg.log_abs);
}

MLEvaluation ml_evaluate(double alpha, double beta, complex z) {
  check_orders(alpha, beta);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("Mittag-Leffler argument must be finite");
  }
  if (z == complex(0.0, 0.0)) return {complex(rgamma(beta), 0.0), MLRoute::zero};
  if (z.imag() < 0.0) {
    MLEvaluation mirrored = ml_evaluate(alpha, beta, std::conj(z));
    mirrored.value = std::conj(mirrored.value);
    return mirrored;
  }

  if (z.imag() == 0.0) {
    MLEvaluation e = ml_evaluate_upper(alpha, beta, z);
    e.value.imag(0.0);
    return e;
  }
  return ml_evaluate_upper(alpha, beta, z);
}

namespace {

MLEvaluation ml_evaluate_upper(double alpha, double beta, complex z) {
  const double rho = std::pow(std::abs(z), 1.0 / alpha);
  if (rho >= kAsymptoticTryScale) {
    const AsymptoticResult a = asymptotic_full(alpha, beta, z, rho);
    const double size = std::abs(a.value);
    if (std::isinf(size) || a.error <= kAsymptoticAcceptance * size) {
      return {a.value, MLRoute::asymptotic};
    }
  }

  const DoubleSeries s = series_double(alpha, beta, z);
  if (s.converged && s.max_term <= kMaxDoubleLoss * std::abs(s.value)) {
    return {s.value, MLRoute::series};
  }
  return {series_extended(alpha, beta, z, rho), MLRoute::extended_series};
}

}  // namespace

complex ml_two(double alpha, double beta, complex z) {
  return ml_evaluate(alpha, beta, z).value;
}

complex ml_one(double alpha, complex z) { return ml_two(alpha, 1.0, z); }

double sector_threshold(double alpha) {
  return 0.5 * (kPi * alpha / 2.0 + std::min(kPi, kPi * alpha));
}

ArgSector classify_arg_sector(double alpha, complex lam) {
  if (lam == complex(0.0, 0.0)) {
    throw DomainError("arg-sector classification needs a nonzero eigenvalue");
  }
  const double theta = sector_threshold(alpha);
  return {theta, std::abs(std::arg(lam)) <= theta ? Regime::exponential : Regime::algebraic};
}

complex ml_asymptotic(const MLParams& params, complex lam, double t, int m) {
  check_orders(params.alpha, params.beta);
  if (m < 1) throw DomainError("asymptotic depth m must be at least 1");
  if (!(t > 0.0)) throw RegimeError("asymptotic expansion needs t > 0");
  const double alpha = params.alpha;
  const double beta = params.beta;
  const complex z = lam * std::pow(t, alpha);
  const double rho = std::pow(std::abs(z), 1.0 / alpha);
  if (!(rho >= kAsymptoticMinScale)) {
    throw RegimeError("|lam t^alpha|^(1/alpha) = " + std::to_string(rho) +
                      " is below the asymptotic threshold " +
                      std::to_string(kAsymptoticMinScale));
  }

  complex sum = 0.0;
  if (classify_arg_sector(alpha, lam).classification == Regime::exponential) {
    const complex log_z = std::log(z);
    sum += exp_safe((1.0 - beta) / alpha * log_z + std::exp(log_z / alpha)) / alpha;
  }
  const complex log_z = std::log(z);
  for (int k = 1; k <= m; ++k) {
    const LogRgamma rg = log_rgamma(beta - alpha * k);
    if (rg.sign == 0) continue;
    sum -= static_cast<double>(rg.sign) * exp_safe(-static_cast<double>(k) * log_z + rg.log_abs);
  }
  return sum;
}

}  // namespace fracio::specfun
