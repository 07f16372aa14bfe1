#pragma once

// Independent numerics for fractional calculus on uniform grids: Caputo
// derivative (L1 family), Riemann-Liouville integral (product trapezoid),
// memory kernels and a fractional Adams-Bashforth-Moulton integrator.
// Used to cross-check the analytic solutions in memsolver.

#include <optional>
#include <vector>

#include "fracio/iomodel.hpp"
#include "fracio/matrixcore.hpp"
#include "fracio/memsolver.hpp"

namespace fracio {

enum class KernelKind { gross_product, investment };

struct MemoryKernel {
  double exponent = 1.0;  // in (0, 1]
  double scale = 1.0;     // fixed to one
  KernelKind kind = KernelKind::gross_product;
};

/// Samples f(i h), i = 0..N-1, on a uniform grid starting at zero.
struct SampledFunction {
  double step = 0.0;
  RealVector values;
  [[nodiscard]] double t(std::size_t i) const { return step * static_cast<double>(i); }
};

/// Vector-valued samples; values[i] is the vector at t = i h.
struct SampledVectorFunction {
  double step = 0.0;
  std::vector<RealVector> values;
};

/// Samples a callable on the grid 0, h, ..., (count-1) h.
template <class F>
SampledFunction sample(F&& f, double step, std::size_t count) {
  SampledFunction s{step, RealVector(count)};
  for (std::size_t i = 0; i < count; ++i) s.values[i] = f(s.t(i));
  return s;
}

/// L1 scheme for 0 < alpha < 1 and finite differences at alpha = 1. For
/// 1 < alpha < 2: the L1 scheme of order alpha - 1 on f - f(0) - f'(0) t,
/// followed by a second-order difference in t. f'(0) is `initial_slope`
/// when given, else a one-sided estimate (poor when f'' is singular at 0).
/// Value at t = 0 is zero. Throws DomainError for fewer than 4 samples or
/// alpha outside (0, 2).
[[nodiscard]] SampledFunction caputo_derivative(const SampledFunction& f, double alpha,
                                                std::optional<double> initial_slope = std::nullopt);

/// Product-trapezoid discretization of the Riemann-Liouville integral,
/// 0 < gamma <= 1.
[[nodiscard]] SampledFunction rl_integral(const SampledFunction& f, double gamma);

/// scale / Gamma(exponent) * (t - tau)^(exponent - 1); DomainError if t <= tau.
[[nodiscard]] double kernel_eval(const MemoryKernel& k, double t, double tau);

/// Largest |y| tolerated by fde_integrate before it reports instability.
inline constexpr double kInstabilityBound = 1e12;

/// Solves D^{alpha_i} y_i = (Lambda y)_i + f_i(t) on t = 0, h, ..., steps h
/// with the fractional predictor-corrector, each component with its own
/// order. `forcing`, when given, must be sampled on the same grid.
[[nodiscard]] Trajectory fde_integrate(const RealMatrix& Lambda, const RealVector& alpha,
                                       const RealVector& y0,
                                       const std::optional<RealVector>& y0_rate,
                                       const std::optional<SampledVectorFunction>& forcing,
                                       double step, std::size_t steps);

struct ResidualReport {
  RealVector t;
  RealVector residual;
  double max = 0.0;
  double mean = 0.0;
};

/// Samples the analytic solution on 0..t_max with step h, applies
/// caputo_derivative per sector and returns
/// |D^alpha Y - M Y + M C| / |M Y| (2-norms) for t >= max(4h, t_min),
/// with M = Lambda for Y and Omega-based forcing for X. Non-finite
/// residuals propagate into max (as NaN/inf).
[[nodiscard]] ResidualReport residual_check(const ModalSolution& solution, const IOModel& model,
                                            const DerivedMatrices& derived, double step,
                                            double t_max, double t_min = 0.0);

}  // namespace fracio
