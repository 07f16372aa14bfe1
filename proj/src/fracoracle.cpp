#include "fracio/fracoracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracio/errors.hpp"
#include "fracio/specfun.hpp"

namespace fracio {
namespace {

constexpr std::size_t kMinSamples = 4;

void check_samples(const SampledFunction& f) {
  if (f.values.size() < kMinSamples)
    throw DomainError("step too coarse: need at least 4 samples, got " +
                      std::to_string(f.values.size()));
  if (!(f.step > 0.0)) throw DomainError("grid step must be positive");
}

// Second-order finite-difference first derivative.
RealVector gradient(const RealVector& f, double h) {
  const std::size_t n = f.size();
  RealVector g(n);
  g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return g;
}

// L1 approximation of the Caputo derivative of order 0 < a < 1.
RealVector l1(const RealVector& f, double h, double a) {
  const std::size_t n = f.size();
  RealVector w(n);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = std::pow(double(k + 1), 1.0 - a) - std::pow(double(k), 1.0 - a);
  RealVector diff(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) diff[i] = f[i] - f[i - 1];
  const double c = std::pow(h, -a) / specfun::gamma(2.0 - a);
  RealVector out(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += w[k] * diff[m - k];
    out[m] = c * s;
  }
  return out;
}

// ABM weight tables for one order a on indices 0..count.
struct AbmWeights {
  double a = 0.0;
  RealVector pow_a;   // k^a
  RealVector pow_a1;  // k^(a+1)
  double pred_scale = 0.0;
  double corr_scale = 0.0;
};

AbmWeights abm_weights(double a, double h, std::size_t count) {
  AbmWeights w;
  w.a = a;
  w.pow_a.resize(count + 2);
  w.pow_a1.resize(count + 2);
  for (std::size_t k = 0; k < count + 2; ++k) {
    w.pow_a[k] = std::pow(double(k), a);
    w.pow_a1[k] = std::pow(double(k), a + 1.0);
  }
  w.pred_scale = std::pow(h, a) / specfun::gamma(a + 1.0);
  w.corr_scale = std::pow(h, a) / specfun::gamma(a + 2.0);
  return w;
}

}  // namespace

SampledFunction caputo_derivative(const SampledFunction& f, double alpha,
                                  std::optional<double> initial_slope) {
  check_samples(f);
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha out of (0,2)");
  const double h = f.step;
  SampledFunction out{h, {}};
  if (alpha == 1.0) {
    out.values = gradient(f.values, h);
  } else if (alpha < 1.0) {
    out.values = l1(f.values, h, alpha);
  } else {
    // D^a f = d/dt D^(a-1) [f - f(0) - f'(0) t]; L1 then sees only function
    // values, which keeps it accurate when f'' is singular at zero.
    const RealVector& v = f.values;
    const double slope =
        initial_slope ? *initial_slope : (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    RealVector u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] - v[0] - slope * f.t(i);
    out.values = gradient(l1(u, h, alpha - 1.0), h);
  }
  out.values[0] = 0.0;
  return out;
}

SampledFunction rl_integral(const SampledFunction& f, double gamma) {
  check_samples(f);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma out of (0,1]");
  const std::size_t n = f.values.size();
  const double g1 = gamma + 1.0;
  RealVector p(n + 1);
  for (std::size_t k = 0; k <= n; ++k) p[k] = std::pow(double(k), g1);
  const double c = std::pow(f.step, gamma) / specfun::gamma(gamma + 2.0);
  SampledFunction out{f.step, RealVector(n, 0.0)};
  for (std::size_t m = 1; m < n; ++m) {
    const double dm = double(m);
    double s = (p[m - 1] - (dm - 1.0 - gamma) * std::pow(dm, gamma)) * f.values[0];
    for (std::size_t j = 1; j < m; ++j) s += (p[m - j + 1] - 2.0 * p[m - j] + p[m - j - 1]) * f.values[j];
    s += f.values[m];
    out.values[m] = c * s;
  }
  return out;
}

double kernel_eval(const MemoryKernel& k, double t, double tau) {
  if (!(k.exponent > 0.0 && k.exponent <= 1.0)) throw DomainError("kernel exponent out of (0,1]");
  if (k.scale != 1.0) throw DomainError("kernel scale must be 1");
  if (!(t > tau)) throw DomainError("kernel needs t > tau");
  return k.scale / specfun::gamma(k.exponent) * std::pow(t - tau, k.exponent - 1.0);
}

Trajectory fde_integrate(const RealMatrix& Lambda, const RealVector& alpha, const RealVector& y0,
                         const std::optional<RealVector>& y0_rate,
                         const std::optional<SampledVectorFunction>& forcing, double step,
                         std::size_t steps) {
  const std::size_t n = Lambda.n();
  if (n == 0 || alpha.size() != n || y0.size() != n)
    throw DimensionError("fde_integrate: inconsistent dimensions");
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  for (double a : alpha)
    if (!(a > 0.0 && a < 2.0)) throw DomainError("alpha out of (0,2)");
  const bool second = std::any_of(alpha.begin(), alpha.end(), [](double a) { return a > 1.0; });
  if (second && (!y0_rate || y0_rate->size() != n))
    throw ValidationError("initial speed required for alpha>1");
  if (forcing && (forcing->values.size() < steps + 1 || std::abs(forcing->step - step) > 1e-12 * step))
    throw DimensionError("forcing must be sampled on the integration grid");

  std::vector<AbmWeights> weights;
  std::vector<std::size_t> which(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find_if(weights.begin(), weights.end(),
                           [&](const AbmWeights& w) { return w.a == alpha[i]; });
    if (it == weights.end()) {
      weights.push_back(abm_weights(alpha[i], step, steps));
      it = weights.end() - 1;
    }
    which[i] = static_cast<std::size_t>(it - weights.begin());
  }

  auto taylor = [&](std::size_t i, double t) {
    double v = y0[i];
    if (alpha[i] > 1.0) v += (*y0_rate)[i] * t;
    return v;
  };
  auto rhs = [&](const RealVector& y, std::size_t idx) {
    RealVector f = Lambda * y;
    if (forcing)
      for (std::size_t i = 0; i < n; ++i) f[i] += forcing->values[idx][i];
    return f;
  };

  Trajectory tr;
  tr.t.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) tr.t[k] = step * double(k);
  tr.values.reserve(steps + 1);
  tr.values.push_back(y0);
  std::vector<RealVector> F;
  F.reserve(steps + 1);
  F.push_back(rhs(y0, 0));

  RealVector pred(n), corr(n);
  for (std::size_t m = 0; m < steps; ++m) {
    // advancing from t_m to t_{m+1}
    const double t1 = tr.t[m + 1];
    for (std::size_t i = 0; i < n; ++i) {
      const AbmWeights& w = weights[which[i]];
      double sp = 0.0;
      for (std::size_t j = 0; j <= m; ++j) {
        const std::size_t d = m - j;
        sp += (w.pow_a[d + 1] - w.pow_a[d]) * F[j][i];
      }
      pred[i] = taylor(i, t1) + w.pred_scale * sp;
    }
    const RealVector fp = rhs(pred, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const AbmWeights& w = weights[which[i]];
      const double dm = double(m);
      double sc = (w.pow_a1[m] - (dm - w.a) * w.pow_a[m + 1]) * F[0][i];
      for (std::size_t j = 1; j <= m; ++j) {
        const std::size_t d = m - j;
        sc += (w.pow_a1[d + 2] - 2.0 * w.pow_a1[d + 1] + w.pow_a1[d]) * F[j][i];
      }
      sc += fp[i];
      corr[i] = taylor(i, t1) + w.corr_scale * sc;
      if (!(std::abs(corr[i]) <= kInstabilityBound))
        throw InstabilityError("integration exceeded 1e12 at t = " + std::to_string(t1));
    }
    tr.values.push_back(corr);
    F.push_back(rhs(corr, m + 1));
  }
  return tr;
}

ResidualReport residual_check(const ModalSolution& solution, const IOModel& model,
                              const DerivedMatrices& derived, double step, double t_max,
                              double t_min) {
  if (!(step > 0.0) || !(t_max > 0.0)) throw DomainError("residual grid needs step, t_max > 0");
  const std::size_t count = static_cast<std::size_t>(std::llround(t_max / step)) + 1;
  if (count < kMinSamples) throw DomainError("step too coarse for residual check");
  RealVector grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = step * double(i);

  const bool gross = solution.variable == Variable::gross_product;
  const RealMatrix& M = gross ? derived.Omega : derived.Lambda;
  const RealMatrix& K = gross ? derived.B_inv : derived.Lambda;
  const std::size_t n = solution.n();
  if (model.n != n) throw DimensionError("model and solution sizes differ");

  const Trajectory y = evaluate_trajectory(solution, grid);
  const Trajectory c = consumption_trajectory(solution, grid);
  std::vector<RealVector> dy(n);
  for (std::size_t j = 0; j < n; ++j) {
    SampledFunction s{step, RealVector(count)};
    for (std::size_t i = 0; i < count; ++i) s.values[i] = y.values[i][j];
    std::optional<double> slope;
    if (solution.alpha[j] > 1.0 && solution.initial_rate) slope = (*solution.initial_rate)[j];
    dy[j] = caputo_derivative(s, solution.alpha[j], slope).values;
  }

  ResidualReport rep;
  const double start = std::max(4.0 * step, t_min) - 1e-9 * step;
  double sum = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < count; ++i) {
    if (grid[i] < start) continue;
    const RealVector my = M * y.values[i];
    const RealVector kc = K * c.values[i];
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = dy[j][i] - my[j] + kc[j];
      num += r * r;
      den += my[j] * my[j];
    }
    const double res = std::sqrt(num) / std::sqrt(den);
    if (!std::isfinite(res)) finite = false;
    rep.t.push_back(grid[i]);
    rep.residual.push_back(res);
    rep.max = std::max(rep.max, res);
    sum += res;
  }
  if (!finite) rep.max = std::numeric_limits<double>::infinity();
  rep.mean = rep.residual.empty() ? 0.0 : sum / double(rep.residual.size());
  if (!finite) rep.mean = std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace fracio
