#pragma once

// Analytic solutions of D^alpha Y = Lambda (Y - C(t)) as Mittag-Leffler
// modal expansions, plus growth-rate and dominance analysis.

#include <optional>
#include <string>
#include <vector>

#include "fracio/iomodel.hpp"
#include "fracio/matrixcore.hpp"
#include "fracio/specfun.hpp"

namespace fracio {

enum class Variable { final_product, gross_product };

struct Mode {
  complex eigenvalue;
  ComplexVector eigenvector;
  complex coeff1;
  complex coeff2;
  /// Whether the t E_{alpha,2} term is present in at least one sector.
  bool ml_beta2 = false;
  /// Order attached to this mode for rate analysis: the uniform order, or
  /// the k-th sector order when orders are sectoral.
  double order = 1.0;
  bool perron = false;
};

/// Particular solution for consumption C_j(t) = C0_j E_{alpha_j}(r_j t^alpha_j):
/// Y_C(t) = sum_j C_j(t) g_j with g_j the j-th column of `gain`.
struct ForcedTerm {
  RealMatrix gain;
  RealVector rates;
  RealVector c0;
};

struct ModalSolution {
  std::vector<Mode> modes;
  RealVector alpha;  // per sector
  std::optional<ForcedTerm> forced_part;
  Variable variable = Variable::final_product;
  RealVector initial;
  std::optional<RealVector> initial_rate;

  [[nodiscard]] std::size_t n() const { return alpha.size(); }
  [[nodiscard]] bool uniform_order() const;
};

/// Rows are time points; values[i] has one entry per sector.
struct Trajectory {
  RealVector t;
  std::vector<RealVector> values;
  [[nodiscard]] std::size_t size() const { return t.size(); }
};

/// Condition threshold above which an eigenbasis is rejected.
inline constexpr double kMaxBasisCondition = 1e12;

/// Solves sum_k c_k v_k = target. Exact conjugate vector pairs get
/// conjugate coefficients; real vectors get real coefficients.
[[nodiscard]] ComplexVector solve_coefficients(const std::vector<ComplexVector>& eigvectors,
                                               const RealVector& target);

[[nodiscard]] ModalSolution solve_closed_uniform(const IOModel& model,
                                                 const DerivedMatrices& derived,
                                                 Variable variable = Variable::final_product);

[[nodiscard]] ModalSolution solve_closed_sectoral(const IOModel& model,
                                                  const DerivedMatrices& derived);

/// Falls back to the closed solvers (bit-for-bit) when C0 = 0.
[[nodiscard]] ModalSolution solve_open(const IOModel& model, const DerivedMatrices& derived);

/// Picks the closed uniform, closed sectoral or open solver.
[[nodiscard]] ModalSolution solve(const IOModel& model, const DerivedMatrices& derived);

/// Maps a final-product solution to the gross product X = (E - A)^-1 Y.
[[nodiscard]] ModalSolution gross_solution_from_final(const ModalSolution& y_solution,
                                                      const DerivedMatrices& derived);

/// lam^(1/alpha), principal branch.
[[nodiscard]] complex effective_growth_rate(complex lam, double alpha);

enum class Dominance { exponential, algebraic_decay, none };

struct ModeRate {
  complex eigenvalue;
  double order = 1.0;
  complex effective_rate;
  specfun::Regime regime = specfun::Regime::exponential;
  bool active = false;  // nonzero coefficient
  bool perron = false;
};

struct AnalysisReport {
  std::vector<ModeRate> modes;
  /// sector_rates[k][j] = lam_k^(1/alpha_j).
  std::vector<ComplexVector> sector_rates;
  Dominance dominance = Dominance::none;
  std::optional<std::size_t> dominant_mode;
  std::optional<std::size_t> memoryless_dominant_mode;
  bool domination_changed = false;
  bool admissible = false;
  std::string admissibility_reason;
  bool perron_available = false;
  double perron_value = 0.0;
  double lambda_s = 0.0;
  std::optional<std::size_t> perron_mode;
  /// lambda_s^(1/alpha) with the order attached to the Perron mode.
  double effective_technological_rate = 0.0;
  bool consumption_feasible = false;
  double max_consumption_rate = 0.0;
  std::vector<std::string> warnings;
};

[[nodiscard]] AnalysisReport analyze(const IOModel& model, const DerivedMatrices& derived,
                                     const ModalSolution& solution);

/// Throws DomainError for negative times.
[[nodiscard]] Trajectory evaluate_trajectory(const ModalSolution& solution, const RealVector& grid);

/// C(t) of the solution's forced part (zeros for closed solutions).
[[nodiscard]] Trajectory consumption_trajectory(const ModalSolution& solution,
                                                const RealVector& grid);

/// I(t) = B Omega X(t) for a closed gross-product solution.
[[nodiscard]] Trajectory investment_trajectory(const IOModel& model, const DerivedMatrices& derived,
                                               const ModalSolution& x_solution,
                                               const RealVector& grid);

/// alpha_k = alpha1 ln(lam_k) / ln(lam_1), equalizing lam_k^(1/alpha_k).
[[nodiscard]] RealVector equal_effective_rate_orders(const RealVector& lams, double alpha1);

}  // namespace fracio
