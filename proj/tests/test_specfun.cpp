#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracio/errors.hpp"
#include "fracio/specfun.hpp"
#include "oracles.hpp"

using namespace fracio;
using specfun::complex;

namespace {

double rel(complex a, complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("gamma at simple points") {
  CHECK(specfun::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(specfun::gamma(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-14));
  // Gamma(1.5) = Gamma(0.5) / 2, cross-checked with the Lanczos oracle
  CHECK(specfun::gamma(1.5) == doctest::Approx(0.8862269255).epsilon(1e-10));
  CHECK(std::abs(specfun::gamma(1.5) - oracle::lanczos_gamma(1.5)) < 1e-14);
}

TEST_CASE("gamma agrees with the Lanczos reference") {
  for (double x = -4.75; x < 30.0; x += 0.37) {
    const double ref = oracle::lanczos_gamma(x);
    CHECK(std::abs(specfun::gamma(x) - ref) <= 1e-12 * std::abs(ref));
  }
}

TEST_CASE("gamma poles") {
  CHECK_THROWS_AS((void)specfun::gamma(0.0), PoleError);
  CHECK_THROWS_AS((void)specfun::gamma(-3.0), PoleError);
  CHECK(specfun::rgamma(-2.0) == 0.0);
  CHECK(specfun::rgamma(3.0) == doctest::Approx(0.5));
}

TEST_CASE("ml_one closed forms") {
  CHECK(rel(specfun::ml_one(1.0, 1.0), std::exp(1.0)) < 1e-14);
  CHECK(specfun::ml_one(0.7, 0.0) == complex(1.0));
  CHECK(rel(specfun::ml_one(2.0, 1.0), std::cosh(1.0)) < 1e-13);
  // E_{1/2}(z) = exp(z^2) erfc(-z)
  const complex v = specfun::ml_one(0.5, -1.0);
  CHECK(rel(v, std::exp(1.0) * std::erfc(1.0)) < 1e-13);
  CHECK(rel(v, oracle::ml_series(0.5, 1.0, -1.0)) < 1e-13);
  CHECK(v.real() == doctest::Approx(0.4275835762).epsilon(1e-10));
}

TEST_CASE("ml_two closed forms") {
  CHECK(rel(specfun::ml_two(1.0, 2.0, 1.0), std::exp(1.0) - 1.0) < 1e-14);
  CHECK(specfun::ml_two(0.8, 2.0, 0.0) == complex(1.0));
  CHECK(rel(specfun::ml_two(2.0, 2.0, 1.0), std::sinh(1.0)) < 1e-13);
}

TEST_CASE("ml parameter checks") {
  CHECK_THROWS_AS((void)specfun::ml_one(0.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)specfun::ml_one(2.5, 1.0), DomainError);
  CHECK_THROWS_AS((void)specfun::ml_two(0.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)specfun::ml_one(0.5, complex(INFINITY, 0.0)), DomainError);
}

TEST_CASE("E_1 equals exp on |z| <= 30") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> r(0.0, 30.0), th(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 400; ++i) {
    const complex z = std::polar(r(rng), th(rng));
    CHECK(rel(specfun::ml_one(1.0, z), std::exp(z)) <= 1e-9);
  }
}

TEST_CASE("recurrence E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ad(0.05, 1.999), r(0.0, 10.0),
      th(-std::numbers::pi, std::numbers::pi);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    const double a = ad(rng);
    const double b = (i % 2) ? 2.0 : 1.0;
    const complex z = std::polar(r(rng), th(rng));
    // values beyond double range are outside the grid
    if (std::pow(std::abs(z), 1.0 / a) > 600.0) continue;
    const complex lhs = specfun::ml_two(a, b, z);
    const complex rhs = z * specfun::ml_two(a, a + b, z) + specfun::rgamma(b);
    const double scale = std::max({std::abs(lhs), std::abs(z * specfun::ml_two(a, a + b, z)), 1.0});
    CHECK(std::abs(lhs - rhs) <= 1e-8 * scale);
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("ml_two(a, 1, z) is ml_one(a, z) bit for bit") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ad(0.1, 2.0), r(0.0, 20.0), th(-3.14, 3.14);
  for (int i = 0; i < 200; ++i) {
    const double a = ad(rng);
    const complex z = std::polar(r(rng), th(rng));
    if (std::pow(std::abs(z), 1.0 / a) > 600.0) continue;
    const complex x = specfun::ml_one(a, z), y = specfun::ml_two(a, 1.0, z);
    CHECK(x.real() == y.real());
    CHECK(x.imag() == y.imag());
  }
}

TEST_CASE("Mittag-Leffler values against the 120-digit series") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ad(0.3, 2.0), th(-std::numbers::pi, std::numbers::pi),
      u(0.0, 1.0);
  for (int i = 0; i < 80; ++i) {
    const double a = ad(rng);
    const double b = (i % 3 == 0) ? 2.0 : (i % 3 == 1 ? 1.0 : 0.5 + u(rng));
    // |z|^(1/a) up to 60 keeps the oracle's cancellation within its digits
    const double rho = 60.0 * u(rng);
    const complex z = std::polar(std::pow(rho, a), th(rng));
    const complex ref = oracle::ml_series(a, b, z);
    const complex got = specfun::ml_two(a, b, z);
    INFO("a=" << a << " b=" << b << " z=" << z);
    CHECK(std::abs(got - ref) <= 1e-10 * std::max(std::abs(ref), 1.0));
  }
}

TEST_CASE("asymptotic expansion examples") {
  const double lam1 = 0.5287886305, lam2 = -5.578788631;
  const specfun::MLParams p{0.5, 1.0, 5};
  const complex a1 = specfun::ml_asymptotic(p, lam1, 50.0, 3);
  const complex s1 = specfun::ml_one(0.5, lam1 * std::sqrt(50.0));
  CHECK(rel(a1, s1) <= 1e-6);
  CHECK(rel(a1, oracle::ml_series(0.5, 1.0, lam1 * std::sqrt(50.0))) <= 1e-6);

  // algebraic branch: leading term -1 / (lam Gamma(1 - a) t^a)
  const complex lead = specfun::ml_asymptotic(p, lam2, 50.0, 1);
  const double expect = -1.0 / (lam2 * oracle::lanczos_gamma(0.5) * std::sqrt(50.0));
  CHECK(std::abs(lead - expect) <= 1e-12 * std::abs(expect));
  const complex a3 = specfun::ml_asymptotic(p, lam2, 50.0, 3);
  CHECK(rel(a3, oracle::ml_half(lam2 * std::sqrt(50.0))) <= 1e-6);

  const complex e = specfun::ml_asymptotic({1.0, 1.0, 5}, 1.0, 10.0, 1);
  CHECK(rel(e, std::exp(10.0)) <= 1e-12);
}

TEST_CASE("asymptotic expansion refuses small arguments") {
  CHECK_THROWS_AS((void)specfun::ml_asymptotic({0.5, 1.0, 5}, 0.1, 1.0, 3), RegimeError);
  CHECK_THROWS_AS((void)specfun::ml_asymptotic({0.5, 1.0, 5}, 1.0, 0.0, 3), RegimeError);
  CHECK_THROWS_AS((void)specfun::ml_asymptotic({0.5, 1.0, 5}, 1.0, 100.0, 0), DomainError);
}

// Relative accuracy of the m = 3 expansion against the 120-digit series.
// Past |arg z| = pi a / 2 the exponential branch decays and the value is
// only the algebraic tail, whose O(z^-4) remainder is ~1e-3 relative at
// |z| = 30; that band gets its own, looser check.
double asymptotic_gap(double a, double arg, double modulus) {
  const complex lam = std::polar(1.0, arg);
  const double t = std::pow(modulus, 1.0 / a);
  const complex z = lam * std::pow(t, a);
  return rel(specfun::ml_asymptotic({a, 1.0, 5}, lam, t, 3), oracle::ml_series(a, 1.0, z));
}

TEST_CASE("asymptotic consistency for |lam t^a| >= 30 in the exponential regime") {
  std::mt19937 rng(17);
  // For a > 1.5 the single-branch expansion at |z| = 30 misses the
  // neighbouring exponential branch exp(z^(1/a) e^(-2 pi i / a)), which is
  // not yet negligible (3e-4 relative at a = 1.69, arg z = 2.19).
  std::uniform_real_distribution<double> ad(0.6, 1.5), u(0.0, 1.0);
  int growing = 0, fading = 0;
  for (int i = 0; i < 60; ++i) {
    const double a = ad(rng);
    const double modulus = 30.0 + 10.0 * u(rng);
    if (std::pow(modulus, 1.0 / a) > 250.0) continue;
    const double edge = 0.5 * std::numbers::pi * a;
    const double theta = specfun::sector_threshold(a);
    const double side = u(rng) < 0.5 ? -1.0 : 1.0;
    if (i % 3 != 2 || a >= 1.0) {
      const double arg = side * 0.9 * edge * u(rng);
      INFO("a=" << a << " arg=" << arg);
      CHECK(asymptotic_gap(a, arg, modulus) <= 1e-4);
      ++growing;
    } else {
      const double arg = side * (edge + (theta - edge) * u(rng));
      INFO("a=" << a << " arg=" << arg);
      CHECK(asymptotic_gap(a, arg, modulus) <= 5e-3);
      ++fading;
    }
  }
  CHECK(growing >= 20);
  CHECK(fading >= 3);
}

TEST_CASE("arg sector classification") {
  CHECK(specfun::classify_arg_sector(0.5, 1.0).classification == specfun::Regime::exponential);
  CHECK(specfun::classify_arg_sector(0.5, -1.0).classification == specfun::Regime::algebraic);
  CHECK(specfun::classify_arg_sector(1.5, -1.0).classification == specfun::Regime::algebraic);
  const double pi = std::numbers::pi;
  CHECK(specfun::sector_threshold(0.5) == doctest::Approx((pi / 4 + pi / 2) / 2));
  CHECK(specfun::sector_threshold(1.5) == doctest::Approx((3 * pi / 4 + pi) / 2));
  CHECK_THROWS_AS((void)specfun::classify_arg_sector(0.5, 0.0), DomainError);
}

TEST_CASE("E_a(lam t^a) increases in t for lam > 0, a in (0, 1]") {
  for (double a : {0.1, 0.3, 0.5, 0.75, 1.0}) {
    for (double lam : {0.05, 0.5288, 1.3, 4.0}) {
      double prev = -1.0;
      for (int i = 0; i <= 200; ++i) {
        const double t = 0.01 * i;
        const double z = lam * std::pow(t, a);
        if (std::pow(z, 1.0 / a) > 600.0) break;
        const double v = specfun::ml_one(a, z).real();
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("evaluation route follows the size of the argument") {
  CHECK(specfun::ml_evaluate(0.5, 1.0, 0.0).route == specfun::MLRoute::zero);
  CHECK(specfun::ml_evaluate(0.5, 1.0, 0.5).route == specfun::MLRoute::series);
  CHECK(specfun::ml_evaluate(0.8, 1.0, 400.0).route == specfun::MLRoute::asymptotic);
}
