#include <doctest.h>

#include <cmath>
#include <random>

#include "fracio/errors.hpp"
#include "fracio/fracoracle.hpp"
#include "fracio/memsolver.hpp"
#include "oracles.hpp"

using namespace fracio;

namespace {

// Per-sector amplitude c_k v_k[j] of mode k.
double amplitude(const ModalSolution& s, std::size_t k, std::size_t j) {
  return (s.modes[k].coeff1 * s.modes[k].eigenvector[j]).real();
}

RealVector grid(double t_max, std::size_t points) {
  RealVector g(points);
  for (std::size_t i = 0; i < points; ++i) g[i] = t_max * double(i) / double(points - 1);
  return g;
}

double norm2(const RealVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<RealVector> rows_of(const RealMatrix& m) { return m.rows(); }

// Closed models with a real, well-separated spectrum of moderate size.
std::optional<IOModel> random_model(std::mt19937& rng, std::size_t n, double alpha) {
  std::uniform_real_distribution<double> a(0.0, 0.5 / double(n)), b(0.05, 0.6), y(10.0, 50.0), r(-5.0, 5.0);
  RealMatrix A(n), B(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      A(i, j) = a(rng);
      B(i, j) = i == j ? 0.5 + b(rng) : 0.3 * b(rng);
    }
  RealVector Y0(n);
  for (auto& v : Y0) v = y(rng);
  IOModel m = IOModel::make(A, B, {alpha}, Y0);
  if (alpha > 1.0) {
    RealVector rate(n);
    for (auto& v : rate) v = r(rng);
    m.Y0_rate = rate;
  }
  const DerivedMatrices d = derive(m);
  const ComplexVector ev = eigenvalues(d.Lambda);
  for (std::size_t i = 0; i < n; ++i) {
    if (ev[i].imag() != 0.0 || std::abs(ev[i]) > 6.0) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(ev[i] - ev[j]) < 0.2) return std::nullopt;
  }
  return m;
}

}  // namespace

TEST_CASE("solve_coefficients in a non-unit reference basis") {
  const auto c2 = solve_coefficients({{0.3027353638, 1.088411532}, {0.7281147014, -0.6854553099}}, {40.0, 40.0});
  CHECK(std::abs(c2[0] - 56.54280044) < 1e-6);
  CHECK(std::abs(c2[1] - 31.42704672) < 1e-6);
  const auto c3 = solve_coefficients({{0.5728488169, 0.8316385716}, {0.7365083952, -0.6764284024}}, {40.0, 40.0});
  CHECK(std::abs(c3[0] - 56.51747192) < 1e-6);
  CHECK(std::abs(c3[1] - 10.35159019) < 1e-6);
  const auto unit = solve_coefficients({{0.6, 0.8}, {1.0, 0.0}}, {0.6, 0.8});
  CHECK(unit[0] == complex(1.0));
  CHECK(std::abs(unit[1]) < 1e-15);
}

TEST_CASE("solve_coefficients rejects a near-parallel basis") {
  CHECK_THROWS_AS((void)solve_coefficients({{1.0, 0.0}, {1.0, 1e-14}}, {1.0, 1.0}), IllConditionedError);
}

TEST_CASE("example 1 amplitudes for final and gross product") {
  IOModel m = oracle::example(1, {0.5});
  m.X0 = RealVector{50.0, 30.0};
  const DerivedMatrices d = derive(m);
  const ModalSolution y = solve_closed_uniform(m, d);
  REQUIRE(y.modes.size() == 2);
  CHECK(y.modes[0].perron);
  CHECK(std::abs(amplitude(y, 0, 0) - 29.66013158) < 1e-6);
  CHECK(std::abs(amplitude(y, 1, 0) - 10.33986842) < 1e-6);
  CHECK(std::abs(amplitude(y, 0, 1) - 50.94516728) < 1e-6);
  CHECK(std::abs(amplitude(y, 1, 1) + 10.94516728) < 1e-6);

  const ModalSolution x = solve_closed_uniform(m, d, Variable::gross_product);
  CHECK(std::abs(amplitude(x, 0, 0) - 33.30935047) < 1e-6);
  CHECK(std::abs(amplitude(x, 1, 0) - 16.69064953) < 1e-6);
  CHECK(std::abs(amplitude(x, 0, 1) - 55.72809714) < 1e-6);
  CHECK(std::abs(amplitude(x, 1, 1) + 25.72809714) < 1e-6);

  const Trajectory t0 = evaluate_trajectory(y, {0.0});
  CHECK(t0.values[0][0] == doctest::Approx(40.0).epsilon(1e-13));
  CHECK(t0.values[0][1] == doctest::Approx(40.0).epsilon(1e-13));
}

TEST_CASE("closed solvers check their preconditions") {
  IOModel open = oracle::example(1, {0.5});
  open.C0 = {1.0, 1.0};
  const DerivedMatrices d = derive(open);
  CHECK_THROWS_AS((void)solve_closed_uniform(open, d), ValidationError);
  CHECK_THROWS_AS((void)solve_closed_sectoral(open, d), ValidationError);
  const IOModel mixed = oracle::example(3, {0.1, 0.9});
  CHECK_THROWS_AS((void)solve_closed_uniform(mixed, derive(mixed)), ValidationError);
  const IOModel fast = oracle::example(1, {1.5});
  CHECK_THROWS_AS((void)solve_closed_uniform(fast, derive(fast)), ValidationError);
}

TEST_CASE("example 3 sectoral amplitudes") {
  const IOModel m = oracle::example(3, {0.1, 0.9});
  const ModalSolution s = solve_closed_sectoral(m, derive(m));
  CHECK(std::abs(amplitude(s, 0, 0) - 32.37596692) < 1e-6);
  CHECK(std::abs(amplitude(s, 1, 0) - 7.624033079) < 1e-6);
  CHECK(std::abs(amplitude(s, 0, 1) - 47.00210962) < 1e-6);
  CHECK(std::abs(amplitude(s, 1, 1) + 7.002109615) < 1e-6);
}

TEST_CASE("sectoral solver with equal orders matches the uniform solver") {
  const IOModel m = oracle::example(3, {0.6});
  const DerivedMatrices d = derive(m);
  const Trajectory u = evaluate_trajectory(solve_closed_uniform(m, d), grid(2.0, 41));
  const Trajectory s = evaluate_trajectory(solve_closed_sectoral(m, d), grid(2.0, 41));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(std::abs(u.values[i][j] - s.values[i][j]) <= 1e-12 * std::abs(u.values[i][j]));
}

TEST_CASE("order one reduces to the exponential solution") {
  for (int which : {1, 2, 3}) {
    const IOModel m = oracle::example(which, {1.0});
    const DerivedMatrices d = derive(m);
    const ModalSolution s = solve(m, d);
    const Trajectory tr = evaluate_trajectory(s, grid(2.0, 51));
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const RealVector ref = oracle::expm_apply(rows_of(d.Lambda), tr.t[i], m.Y0);
      const double gap = std::hypot(tr.values[i][0] - ref[0], tr.values[i][1] - ref[1]);
      CHECK(gap <= 1e-9 * norm2(ref));
    }
  }
}

TEST_CASE("example 1 at order one, t = 1, against the scalar formula") {
  const IOModel m = oracle::example(1, {1.0});
  const Trajectory tr = evaluate_trajectory(solve(m, derive(m)), {0.0, 1.0});
  CHECK(tr.values[0][0] == doctest::Approx(40.0).epsilon(1e-13));
  const double y1 = 29.66013158 * std::exp(0.5287886305) + 10.33986842 * std::exp(-5.578788631);
  const double y2 = 50.94516728 * std::exp(0.5287886305) - 10.94516728 * std::exp(-5.578788631);
  CHECK(tr.values[1][0] == doctest::Approx(y1).epsilon(1e-9));
  CHECK(tr.values[1][1] == doctest::Approx(y2).epsilon(1e-9));
  CHECK(evaluate_trajectory(solve(m, derive(m)), {}).size() == 0);
  CHECK_THROWS_AS((void)evaluate_trajectory(solve(m, derive(m)), {-0.1}), DomainError);
}

TEST_CASE("sectoral orders equal to one give the exponential solution") {
  const IOModel m = oracle::example(3, {1.0, 1.0});
  const DerivedMatrices d = derive(m);
  const Trajectory tr = evaluate_trajectory(solve_closed_sectoral(m, d), grid(1.0, 11));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const RealVector ref = oracle::expm_apply(rows_of(d.Lambda), tr.t[i], m.Y0);
    CHECK(std::hypot(tr.values[i][0] - ref[0], tr.values[i][1] - ref[1]) <= 1e-9 * norm2(ref));
  }
}

TEST_CASE("initial speed is reproduced for orders above one") {
  for (double a : {1.3, 1.8}) {
    IOModel m = oracle::example(1, {a});
    m.Y0_rate = RealVector{10.0, -20.0};
    const DerivedMatrices d = derive(m);
    const double h = 1e-5;
    const Trajectory tr = evaluate_trajectory(solve(m, d), {0.0, h});
    // Y(h) = Y0 + Y0' h + Lambda Y0 h^a / Gamma(a + 1) + O(h^(a+1)); the
    // third term is removed before comparing slopes
    const RealVector ly = d.Lambda * m.Y0;
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(tr.values[0][j] == doctest::Approx(m.Y0[j]).epsilon(1e-13));
      const double fd = (tr.values[1][j] - tr.values[0][j]) / h;
      const double memory = ly[j] * std::pow(h, a - 1.0) / std::tgamma(a + 1.0);
      CHECK(std::abs(fd - memory - (*m.Y0_rate)[j]) <= 1e-3 * std::abs((*m.Y0_rate)[j]));
      if (a > 1.5) CHECK(std::abs(fd - (*m.Y0_rate)[j]) <= 1e-3 * std::abs((*m.Y0_rate)[j]));
    }
  }
}

TEST_CASE("open model: zero rate gives a constant forced part") {
  IOModel m = oracle::example(1, {0.5});
  m.C0 = {5.0, 3.0};
  const DerivedMatrices d = derive(m);
  const ModalSolution s = solve_open(m, d);
  REQUIRE(s.forced_part);
  CHECK(max_abs_diff(s.forced_part->gain, RealMatrix::identity(2)) < 1e-15);
  const Trajectory c = consumption_trajectory(s, {0.0, 0.5, 2.0});
  for (const auto& row : c.values) CHECK(row == RealVector{5.0, 3.0});
  const Trajectory y = evaluate_trajectory(s, {0.0});
  CHECK(y.values[0][0] == doctest::Approx(40.0).epsilon(1e-13));
}

TEST_CASE("open model with C0 = 0 is the closed solution bit for bit") {
  for (const IOModel& m : {oracle::example(1, {0.5}), oracle::example(3, {0.1, 0.9})}) {
    IOModel open = m;
    open.consumption_rates = {0.2, 0.2};
    const DerivedMatrices d = derive(open);
    const ModalSolution a = solve_open(open, d);
    const ModalSolution b = m.uniform_order() ? solve_closed_uniform(m, d) : solve_closed_sectoral(m, d);
    CHECK_FALSE(a.forced_part.has_value());
    const RealVector g = grid(1.0, 21);
    const Trajectory ta = evaluate_trajectory(a, g), tb = evaluate_trajectory(b, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(ta.values[i] == tb.values[i]);
  }
}

TEST_CASE("open model: consumption rate at an eigenvalue of Lambda") {
  IOModel m = oracle::example(1, {0.5});
  m.C0 = {5.0, 5.0};
  const double lam = (-5.05 + std::sqrt(5.05 * 5.05 + 4.0 * 2.95)) / 2.0;
  m.consumption_rates = {lam, lam};
  CHECK_THROWS_AS((void)solve_open(m, derive(m)), SingularMatrixError);
}

TEST_CASE("open model residual, example 1 matrices, C0 = (5, 5), r = 0.2, alpha = 0.8") {
  IOModel m = oracle::example(1, {0.8});
  m.C0 = {5.0, 5.0};
  m.consumption_rates = {0.2, 0.2};
  const DerivedMatrices d = derive(m);
  const ModalSolution s = solve_open(m, d);
  const ResidualReport r = residual_check(s, m, d, 1e-3, 2.0, 0.1);
  CHECK(r.max <= 1e-3);
}

TEST_CASE("effective growth rates") {
  CHECK(std::abs(effective_growth_rate(2.0, 0.2) - 32.0) <= 1e-10);
  CHECK(std::abs(effective_growth_rate(1.317658738, 0.1) - 15.77718303) <= 1e-6);
  CHECK(std::abs(effective_growth_rate(6.396626976, 0.9) - 7.861422531) <= 1e-6);
  CHECK(effective_growth_rate(0.37, 1.0) == complex(0.37));
  CHECK_THROWS_AS((void)effective_growth_rate(1.0, 2.0), DomainError);
  // principal branch for negative and complex eigenvalues
  const complex neg = effective_growth_rate(-4.0, 0.5);
  CHECK(std::abs(neg - complex(16.0, 0.0)) < 1e-12);
}

TEST_CASE("growth-rate table over random samples") {
  std::mt19937 rng(1000);
  std::uniform_real_distribution<double> lam(0.01, 5.0), al(0.02, 1.98);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double l = lam(rng), a = al(rng);
    const double e = effective_growth_rate(l, a).real();
    const bool below = (l < 1 && a < 1) || (l > 1 && a > 1);
    const bool above = (l < 1 && a > 1) || (l > 1 && a < 1);
    if (below && !(e < l)) ++violations;
    if (above && !(e > l)) ++violations;
  }
  CHECK(violations == 0);
  CHECK(effective_growth_rate(1.0, 0.3).real() == 1.0);
  CHECK(effective_growth_rate(2.5, 1.0).real() == 2.5);
}

TEST_CASE("analysis of the three examples") {
  {
    const IOModel m = oracle::example(1, {0.5});
    const DerivedMatrices d = derive(m);
    const AnalysisReport r = analyze(m, d, solve(m, d));
    REQUIRE(r.dominant_mode);
    CHECK(std::abs(r.modes[*r.dominant_mode].eigenvalue.real() - 0.5287886305) < 1e-9);
    CHECK(r.admissible);
    CHECK(std::abs(r.perron_value - 1.891114790) < 1e-8);
    CHECK(std::abs(r.lambda_s - 0.5287886305) < 1e-8);
    CHECK(r.dominance == Dominance::exponential);
    CHECK(r.effective_technological_rate == doctest::Approx(0.5287886305 * 0.5287886305).epsilon(1e-9));
  }
  for (double a : {0.3, 0.5, 0.9, 1.0}) {
    const IOModel m = oracle::example(2, {a});
    const DerivedMatrices d = derive(m);
    const AnalysisReport r = analyze(m, d, solve(m, d));
    REQUIRE(r.dominant_mode);
    CHECK(std::abs(r.modes[*r.dominant_mode].eigenvalue.real() - 7.842293144) < 1e-8);
    CHECK_FALSE(r.admissible);
  }
  {
    const IOModel m = oracle::example(3, {0.1, 0.9});
    const DerivedMatrices d = derive(m);
    const AnalysisReport r = analyze(m, d, solve(m, d));
    CHECK(r.domination_changed);
    CHECK(r.admissible);
    REQUIRE(r.dominant_mode);
    CHECK(std::abs(r.modes[*r.dominant_mode].effective_rate.real() - 15.77718303) < 1e-6);
    CHECK(r.modes[*r.dominant_mode].perron);
    CHECK(std::abs(r.perron_value - 0.7589218447) < 1e-8);
  }
  {
    const IOModel m = oracle::example(3, {0.5, 0.5});
    const DerivedMatrices d = derive(m);
    const AnalysisReport r = analyze(m, d, solve(m, d));
    CHECK_FALSE(r.domination_changed);
    CHECK_FALSE(r.admissible);
  }
}

TEST_CASE("domination change flag compares argmax lambda with argmax lambda^(1/alpha)") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> al(0.1, 1.0);
  int checked = 0, changed = 0;
  for (int i = 0; i < 400 && checked < 60; ++i) {
    auto m = random_model(rng, 2, 0.5);
    if (!m) continue;
    m->alpha = {al(rng), al(rng)};
    const DerivedMatrices d = derive(*m);
    const ModalSolution s = solve(*m, d);
    const AnalysisReport r = analyze(*m, d, s);
    if (s.modes[0].eigenvalue.real() <= 0.0 || s.modes[1].eigenvalue.real() <= 0.0) continue;
    std::size_t by_lam = 0, by_rate = 0;
    for (std::size_t k = 1; k < 2; ++k) {
      if (s.modes[k].eigenvalue.real() > s.modes[by_lam].eigenvalue.real()) by_lam = k;
      if (std::pow(s.modes[k].eigenvalue.real(), 1.0 / s.modes[k].order) >
          std::pow(s.modes[by_rate].eigenvalue.real(), 1.0 / s.modes[by_rate].order))
        by_rate = k;
    }
    CHECK(r.domination_changed == (by_lam != by_rate));
    changed += r.domination_changed;
    ++checked;
  }
  CHECK(checked >= 30);
  CHECK(changed > 0);
}

TEST_CASE("complex eigenvalues: conjugate coefficients and a real trajectory") {
  // Lambda = B^-1 = [[1, -2], [2, 1]], eigenvalues 1 +- 2i
  const IOModel m = IOModel::make(RealMatrix(2), RealMatrix::from_rows({{0.2, 0.4}, {-0.4, 0.2}}), {0.7},
                                  {3.0, 1.0});
  const DerivedMatrices d = derive(m);
  const ModalSolution s = solve(m, d);
  REQUIRE(s.modes.size() == 2);
  CHECK(s.modes[1].eigenvalue == std::conj(s.modes[0].eigenvalue));
  CHECK(s.modes[1].coeff1 == std::conj(s.modes[0].coeff1));
  const Trajectory tr = evaluate_trajectory(s, grid(1.0, 11));
  CHECK(tr.values[0][0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(tr.values[0][1] == doctest::Approx(1.0).epsilon(1e-13));
  const ResidualReport res = residual_check(s, m, d, 1e-3, 1.0, 0.1);
  CHECK(res.max <= 1e-3);

  const AnalysisReport r = analyze(m, d, s);
  CHECK_FALSE(r.perron_available);
  CHECK_FALSE(r.admissible);
  CHECK(r.dominance == Dominance::exponential);
}

TEST_CASE("all-decaying spectrum is reported as algebraic decay") {
  // Lambda = -diag(1, 3)
  const IOModel m =
      IOModel::make(RealMatrix(2), RealMatrix::diagonal({-1.0, -1.0 / 3.0}), {0.5}, {1.0, 1.0});
  const DerivedMatrices d = derive(m);
  const ModalSolution s = solve(m, d);
  const AnalysisReport r = analyze(m, d, s);
  CHECK(r.dominance == Dominance::algebraic_decay);
  REQUIRE(r.dominant_mode);
  // same order; the larger |c| / |lam| (lam = -1) decays slowest in absolute terms
  CHECK(s.modes[*r.dominant_mode].eigenvalue.real() == doctest::Approx(-1.0));
  CHECK_FALSE(r.admissible);
}

TEST_CASE("linearity in the initial condition") {
  const IOModel m = oracle::example(1, {0.5});
  const DerivedMatrices d = derive(m);
  IOModel scaled = m;
  for (auto& v : scaled.Y0) v *= 3.7;
  const ModalSolution a = solve(m, d), b = solve(scaled, d);
  for (std::size_t k = 0; k < 2; ++k)
    CHECK(std::abs(b.modes[k].coeff1 - 3.7 * a.modes[k].coeff1) <= 1e-12 * std::abs(b.modes[k].coeff1));
}

TEST_CASE("investment trajectory") {
  // A = 0, B = E: Lambda = E has a repeated eigenvalue, so the modal
  // solution is assembled by hand from the standard basis
  const IOModel unit = IOModel::make(RealMatrix(2), RealMatrix::identity(2), {0.5}, {2.0, 1.5});
  const DerivedMatrices du = derive(unit);
  ModalSolution xu;
  xu.alpha = {0.5, 0.5};
  xu.variable = Variable::gross_product;
  xu.initial = unit.Y0;
  for (std::size_t k = 0; k < 2; ++k) {
    Mode md;
    md.eigenvalue = 1.0;
    md.eigenvector = {k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0};
    md.coeff1 = unit.Y0[k];
    md.order = 0.5;
    xu.modes.push_back(md);
  }
  const RealVector g{0.0, 0.3, 1.0};
  const Trajectory iu = investment_trajectory(unit, du, xu, g);
  const Trajectory xt = evaluate_trajectory(xu, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(iu.values[i][j] == doctest::Approx(xt.values[i][j]));

  IOModel m = oracle::example(1, {0.5});
  m.X0 = RealVector{50.0, 30.0};
  const DerivedMatrices d = derive(m);
  const ModalSolution x = solve_closed_uniform(m, d, Variable::gross_product);
  const Trajectory i0 = investment_trajectory(m, d, x, {0.0});
  // B Omega (50, 30) with Omega = [[-2.65, 1.9], [4.9, -2.4]] gives (39, 11)
  CHECK(i0.values[0][0] == doctest::Approx(39.0).epsilon(1e-12));
  CHECK(i0.values[0][1] == doctest::Approx(11.0).epsilon(1e-12));

  IOModel zero = m;
  zero.X0 = RealVector{0.0, 0.0};
  const Trajectory iz = investment_trajectory(zero, d, solve_closed_uniform(zero, d, Variable::gross_product),
                                              {0.0, 0.5});
  for (const auto& row : iz.values) CHECK(row == RealVector{0.0, 0.0});

  CHECK_THROWS_AS((void)investment_trajectory(m, d, solve(m, d), {0.0}), DomainError);
}

TEST_CASE("gross solution mapped from the final product") {
  const IOModel m = oracle::example(1, {0.5});
  const DerivedMatrices d = derive(m);
  const ModalSolution y = solve(m, d);
  const ModalSolution x = gross_solution_from_final(y, d);
  const RealVector g{0.0, 0.4, 1.3};
  const Trajectory ty = evaluate_trajectory(y, g), tx = evaluate_trajectory(x, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const RealVector back = final_from_gross(m.A, tx.values[i]);
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(back[j] == doctest::Approx(ty.values[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("equal effective-rate orders") {
  const RealVector a = equal_effective_rate_orders({2.0, 4.0}, 0.5);
  CHECK(a[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::pow(2.0, 1.0 / a[0]) == doctest::Approx(std::pow(4.0, 1.0 / a[1])));
  CHECK(equal_effective_rate_orders({std::exp(1.0), std::exp(2.0)}, 1.0)[1] == doctest::Approx(2.0));
  CHECK(equal_effective_rate_orders({3.0, 3.0}, 0.7)[1] == doctest::Approx(0.7));
  CHECK_THROWS_AS((void)equal_effective_rate_orders({1.0, 2.0}, 0.5), DomainError);
  CHECK_THROWS_AS((void)equal_effective_rate_orders({-1.0, 2.0}, 0.5), DomainError);
}

TEST_CASE("oracle residual on random 2x2 and 3x3 models") {
  std::mt19937 rng(31337);
  for (double alpha : {0.4, 0.8, 1.3}) {
    for (std::size_t n : {2u, 3u}) {
      int done = 0;
      for (int attempt = 0; attempt < 500 && done < 2; ++attempt) {
        const auto m = random_model(rng, n, alpha);
        if (!m) continue;
        const DerivedMatrices d = derive(*m);
        const ModalSolution s = solve(*m, d);
        const ResidualReport r = residual_check(s, *m, d, 1e-3, 2.0, 0.1);
        INFO("alpha=" << alpha << " n=" << n);
        CHECK(r.max <= 1e-3);
        ++done;
      }
      CHECK(done == 2);
    }
  }
}
