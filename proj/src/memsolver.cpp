#include "fracio/memsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "fracio/errors.hpp"

namespace fracio {
namespace {

constexpr double kPerronMatch = 1e-8;
constexpr double kActiveCoefficient = 1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool is_real(const ComplexVector& v) {
  return std::all_of(v.begin(), v.end(), [](const complex& c) { return c.imag() == 0.0; });
}

bool is_conjugate(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != std::conj(a[i])) return false;
  return true;
}

// Index of the Perron mode (eigenvalue 1/s_max of S) or nullopt.
std::optional<std::size_t> find_perron_mode(const std::vector<EigenPair>& pairs,
                                            const RealMatrix& S) {
  double s = 0.0;
  try {
    s = perron(S).value;
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!(s > 0.0)) return std::nullopt;
  const double lambda_s = 1.0 / s;
  std::optional<std::size_t> best;
  double best_gap = kPerronMatch * std::max(1.0, lambda_s);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k].value.imag() != 0.0) continue;
    const double gap = std::abs(pairs[k].value.real() - lambda_s);
    if (gap <= best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return best;
}

// Eigenmodes of Lambda, Perron mode first, then in eig() order. For the gross
// product the vectors are mapped through (E - A)^-1 (eigenvectors of Omega).
std::vector<Mode> base_modes(const DerivedMatrices& d, const RealVector& alpha, Variable variable) {
  std::vector<EigenPair> pairs = eig(d.Lambda);
  const auto p = find_perron_mode(pairs, d.S);
  if (p && *p != 0) std::rotate(pairs.begin(), pairs.begin() + *p, pairs.begin() + *p + 1);

  const bool uniform =
      std::all_of(alpha.begin(), alpha.end(), [&](double a) { return a == alpha.front(); });
  std::vector<Mode> modes;
  modes.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Mode m;
    m.eigenvalue = pairs[k].value;
    m.eigenvector = pairs[k].vector;
    if (variable == Variable::gross_product) {
      m.eigenvector = d.EminusA_inv * m.eigenvector;
      normalize_eigenvector(m.eigenvector);
    }
    m.order = uniform ? alpha.front() : alpha[k];
    m.perron = p.has_value() && k == 0;
    modes.push_back(std::move(m));
  }
  return modes;
}

void attach_coefficients(std::vector<Mode>& modes, const RealVector& alpha,
                         const RealVector& initial, const std::optional<RealVector>& rate) {
  std::vector<ComplexVector> vectors;
  for (const auto& m : modes) vectors.push_back(m.eigenvector);
  const ComplexVector c1 = solve_coefficients(vectors, initial);
  const bool second = std::any_of(alpha.begin(), alpha.end(), [](double a) { return a > 1.0; });
  ComplexVector c2(modes.size(), 0.0);
  if (second) {
    if (!rate) throw ValidationError("initial speed required for alpha>1");
    c2 = solve_coefficients(vectors, *rate);
  }
  for (std::size_t k = 0; k < modes.size(); ++k) {
    modes[k].coeff1 = c1[k];
    modes[k].coeff2 = c2[k];
    modes[k].ml_beta2 = second;
  }
}

void require_closed(const IOModel& model) {
  if (!model.closed()) throw ValidationError("closed solve requires C0 = 0");
}

// Per-order cache of E_{a,1}(lam_k t^a) and t E_{a,2}(lam_k t^a) at one t.
struct OrderTerms {
  ComplexVector e1;
  ComplexVector e2;
};

OrderTerms order_terms(const std::vector<Mode>& modes, double a, double t) {
  OrderTerms out;
  out.e1.resize(modes.size());
  out.e2.assign(modes.size(), 0.0);
  const double ta = std::pow(t, a);
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const complex z = modes[k].eigenvalue * ta;
    out.e1[k] = t == 0.0 ? complex(1.0) : specfun::ml_two(a, 1.0, z);
    if (a > 1.0 && modes[k].ml_beta2)
      out.e2[k] = t == 0.0 ? complex(0.0) : t * specfun::ml_two(a, 2.0, z);
  }
  return out;
}

double forced_factor(const ForcedTerm& f, const RealVector& alpha, std::size_t j, double t) {
  if (t == 0.0 || f.rates[j] == 0.0) return f.c0[j];
  return f.c0[j] * specfun::ml_two(alpha[j], 1.0, f.rates[j] * std::pow(t, alpha[j])).real();
}

void check_grid(const RealVector& grid) {
  for (double t : grid)
    if (!(t >= 0.0)) throw DomainError("negative time in evaluation grid: " + fmt(t));
}

}  // namespace

bool ModalSolution::uniform_order() const {
  return std::all_of(alpha.begin(), alpha.end(), [&](double a) { return a == alpha.front(); });
}

ComplexVector solve_coefficients(const std::vector<ComplexVector>& eigvectors,
                                 const RealVector& target) {
  const ComplexVector rhs(target.begin(), target.end());
  BasisSolve bs = solve_in_basis(eigvectors, rhs);
  if (!(bs.condition <= kMaxBasisCondition))
    throw IllConditionedError("eigenbasis condition number " + fmt(bs.condition) + " exceeds 1e12",
                              bs.condition);
  ComplexVector& c = bs.coefficients;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (is_real(eigvectors[k])) c[k] = {c[k].real(), 0.0};
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    if (is_real(eigvectors[k]) || !is_conjugate(eigvectors[k], eigvectors[k + 1])) continue;
    const complex avg = 0.5 * (c[k] + std::conj(c[k + 1]));
    c[k] = avg;
    c[k + 1] = std::conj(avg);
    ++k;
  }
  return c;
}

ModalSolution solve_closed_uniform(const IOModel& model, const DerivedMatrices& derived,
                                   Variable variable) {
  require_closed(model);
  if (!model.uniform_order()) throw ValidationError("uniform solve requires equal orders");
  ModalSolution sol;
  sol.alpha = model.alpha;
  sol.variable = variable;
  if (variable == Variable::final_product) {
    sol.initial = model.Y0;
    sol.initial_rate = model.Y0_rate;
  } else {
    sol.initial = model.X0 ? *model.X0 : derived.EminusA_inv * model.Y0;
    if (model.Y0_rate) sol.initial_rate = derived.EminusA_inv * *model.Y0_rate;
  }
  sol.modes = base_modes(derived, sol.alpha, variable);
  attach_coefficients(sol.modes, sol.alpha, sol.initial, sol.initial_rate);
  return sol;
}

ModalSolution solve_closed_sectoral(const IOModel& model, const DerivedMatrices& derived) {
  require_closed(model);
  ModalSolution sol;
  sol.alpha = model.alpha;
  sol.variable = Variable::final_product;
  sol.initial = model.Y0;
  sol.initial_rate = model.Y0_rate;
  sol.modes = base_modes(derived, sol.alpha, Variable::final_product);
  attach_coefficients(sol.modes, sol.alpha, sol.initial, sol.initial_rate);
  return sol;
}

ModalSolution solve_open(const IOModel& model, const DerivedMatrices& derived) {
  if (model.closed())
    return model.uniform_order() ? solve_closed_uniform(model, derived)
                                 : solve_closed_sectoral(model, derived);
  const std::size_t n = model.n;
  ForcedTerm f;
  f.rates = model.consumption_rates;
  f.c0 = model.C0;
  f.gain = RealMatrix(n);
  const RealMatrix eye = RealMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    RealVector e(n, 0.0);
    e[j] = 1.0;
    RealVector g;
    try {
      g = solve(eye - derived.S * f.rates[j], e);
    } catch (const SingularMatrixError& err) {
      throw SingularMatrixError("E - R S is singular: consumption rate r_" + std::to_string(j + 1) +
                                    " hits an eigenvalue of Lambda",
                                err.determinant_magnitude());
    }
    for (std::size_t i = 0; i < n; ++i) f.gain(i, j) = g[i];
  }

  ModalSolution sol;
  sol.alpha = model.alpha;
  sol.variable = Variable::final_product;
  sol.initial = model.Y0;
  sol.initial_rate = model.Y0_rate;
  const RealVector forced0 = f.gain * f.c0;
  RealVector homogeneous(n);
  for (std::size_t i = 0; i < n; ++i) homogeneous[i] = model.Y0[i] - forced0[i];
  sol.modes = base_modes(derived, sol.alpha, Variable::final_product);
  attach_coefficients(sol.modes, sol.alpha, homogeneous, sol.initial_rate);
  sol.forced_part = std::move(f);
  return sol;
}

ModalSolution solve(const IOModel& model, const DerivedMatrices& derived) {
  if (!model.closed()) return solve_open(model, derived);
  return model.uniform_order() ? solve_closed_uniform(model, derived)
                               : solve_closed_sectoral(model, derived);
}

ModalSolution gross_solution_from_final(const ModalSolution& y_solution,
                                        const DerivedMatrices& derived) {
  if (y_solution.variable != Variable::final_product)
    throw DomainError("expected a final-product solution");
  ModalSolution x = y_solution;
  x.variable = Variable::gross_product;
  for (auto& m : x.modes) {
    const ComplexVector w = derived.EminusA_inv * m.eigenvector;
    ComplexVector u = w;
    normalize_eigenvector(u);
    // w = s u; fold s into the coefficients
    std::size_t at = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(u[i]) > std::abs(u[at])) at = i;
    const complex s = w[at] / u[at];
    m.eigenvector = std::move(u);
    m.coeff1 *= s;
    m.coeff2 *= s;
  }
  x.initial = derived.EminusA_inv * y_solution.initial;
  if (y_solution.initial_rate) x.initial_rate = derived.EminusA_inv * *y_solution.initial_rate;
  if (x.forced_part) x.forced_part->gain = derived.EminusA_inv * x.forced_part->gain;
  return x;
}

complex effective_growth_rate(complex lam, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha out of (0,2)");
  if (lam.imag() == 0.0 && lam.real() >= 0.0) return std::pow(lam.real(), 1.0 / alpha);
  return std::pow(lam, 1.0 / alpha);
}

AnalysisReport analyze(const IOModel& model, const DerivedMatrices& derived,
                       const ModalSolution& solution) {
  AnalysisReport r;
  const std::size_t nm = solution.modes.size();

  double cmax = 0.0;
  for (const auto& m : solution.modes)
    cmax = std::max(cmax, std::abs(m.coeff1) + std::abs(m.coeff2));

  for (std::size_t k = 0; k < nm; ++k) {
    const Mode& m = solution.modes[k];
    ModeRate mr;
    mr.eigenvalue = m.eigenvalue;
    mr.order = m.order;
    mr.effective_rate = effective_growth_rate(m.eigenvalue, m.order);
    mr.regime = m.eigenvalue == 0.0
                    ? specfun::Regime::algebraic
                    : specfun::classify_arg_sector(m.order, m.eigenvalue).classification;
    mr.active = cmax > 0.0 && std::abs(m.coeff1) + std::abs(m.coeff2) > kActiveCoefficient * cmax;
    mr.perron = m.perron;
    if (m.perron) r.perron_mode = k;
    r.modes.push_back(mr);

    ComplexVector row;
    for (double a : solution.alpha) row.push_back(effective_growth_rate(m.eigenvalue, a));
    r.sector_rates.push_back(std::move(row));
  }

  try {
    const PerronResult p = perron(derived.S);
    if (p.value > 0.0) {
      r.perron_available = true;
      r.perron_value = p.value;
      r.lambda_s = 1.0 / p.value;
    } else {
      r.warnings.push_back("Frobenius-Perron number of S is zero");
    }
  } catch (const Error& e) {
    r.warnings.push_back(std::string("no Frobenius-Perron data for S: ") + e.what());
  }
  if (r.perron_available) {
    const double order = r.perron_mode ? solution.modes[*r.perron_mode].order : solution.alpha[0];
    r.effective_technological_rate = std::pow(r.lambda_s, 1.0 / order);
  }

  // Exponential-regime modes outgrow everything else.
  for (std::size_t k = 0; k < nm; ++k) {
    const ModeRate& mr = r.modes[k];
    if (!mr.active || mr.regime != specfun::Regime::exponential) continue;
    if (!r.dominant_mode ||
        mr.effective_rate.real() > r.modes[*r.dominant_mode].effective_rate.real())
      r.dominant_mode = k;
  }
  if (r.dominant_mode) {
    r.dominance = Dominance::exponential;
  } else {
    // Slowest algebraic decay t^-alpha wins; a zero eigenvalue does not decay.
    auto decay = [&](std::size_t k) { return r.modes[k].eigenvalue == 0.0 ? 0.0 : r.modes[k].order; };
    auto weight = [&](std::size_t k) {
      const Mode& m = solution.modes[k];
      const double lam = std::abs(m.eigenvalue);
      return (std::abs(m.coeff1) + std::abs(m.coeff2)) / (lam > 0.0 ? lam : 1.0);
    };
    for (std::size_t k = 0; k < nm; ++k) {
      if (!r.modes[k].active) continue;
      if (!r.dominant_mode || decay(k) < decay(*r.dominant_mode) ||
          (decay(k) == decay(*r.dominant_mode) && weight(k) > weight(*r.dominant_mode)))
        r.dominant_mode = k;
    }
    r.dominance = r.dominant_mode ? Dominance::algebraic_decay : Dominance::none;
  }

  for (std::size_t k = 0; k < nm; ++k) {
    if (!r.modes[k].active) continue;
    if (!r.memoryless_dominant_mode ||
        r.modes[k].eigenvalue.real() > r.modes[*r.memoryless_dominant_mode].eigenvalue.real())
      r.memoryless_dominant_mode = k;
  }
  r.domination_changed = r.dominant_mode != r.memoryless_dominant_mode;

  if (!r.perron_mode) {
    r.admissible = false;
    r.admissibility_reason = "no Frobenius-Perron mode available";
  } else if (r.dominance != Dominance::exponential) {
    r.admissible = false;
    r.admissibility_reason = "no exponentially growing mode; solution decays algebraically";
  } else if (*r.dominant_mode == *r.perron_mode) {
    r.admissible = true;
    r.admissibility_reason = "dominant mode is the Frobenius-Perron mode";
  } else {
    r.admissible = false;
    r.admissibility_reason = "dominant mode " + std::to_string(*r.dominant_mode + 1) +
                             " is not the Frobenius-Perron mode; sector values turn negative";
  }

  r.max_consumption_rate = 0.0;
  for (double rk : model.consumption_rates) r.max_consumption_rate = std::max(r.max_consumption_rate, rk);
  r.consumption_feasible = r.perron_available && r.max_consumption_rate < r.lambda_s;
  if (r.perron_available && !model.closed())
    for (std::size_t k = 0; k < model.consumption_rates.size(); ++k)
      if (model.consumption_rates[k] >= r.lambda_s)
        r.warnings.push_back("consumption rate r_" + std::to_string(k + 1) + " = " +
                             fmt(model.consumption_rates[k]) + " is not below lambda_s = " +
                             fmt(r.lambda_s));
  return r;
}

Trajectory evaluate_trajectory(const ModalSolution& solution, const RealVector& grid) {
  check_grid(grid);
  const std::size_t n = solution.n();
  Trajectory tr;
  tr.t = grid;
  tr.values.reserve(grid.size());
  for (double t : grid) {
    std::map<double, OrderTerms> cache;
    RealVector row(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = solution.alpha[j];
      auto it = cache.find(a);
      if (it == cache.end()) it = cache.emplace(a, order_terms(solution.modes, a, t)).first;
      const OrderTerms& ot = it->second;
      complex y = 0.0;
      for (std::size_t k = 0; k < solution.modes.size(); ++k) {
        const Mode& m = solution.modes[k];
        y += m.coeff1 * ot.e1[k] * m.eigenvector[j];
        if (a > 1.0) y += m.coeff2 * ot.e2[k] * m.eigenvector[j];
      }
      row[j] = y.real();
    }
    if (solution.forced_part) {
      const ForcedTerm& f = *solution.forced_part;
      for (std::size_t i = 0; i < n; ++i) {
        const double ci = forced_factor(f, solution.alpha, i, t);
        for (std::size_t j = 0; j < n; ++j) row[j] += f.gain(j, i) * ci;
      }
    }
    tr.values.push_back(std::move(row));
  }
  return tr;
}

Trajectory consumption_trajectory(const ModalSolution& solution, const RealVector& grid) {
  check_grid(grid);
  Trajectory tr;
  tr.t = grid;
  for (double t : grid) {
    RealVector row(solution.n(), 0.0);
    if (solution.forced_part)
      for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = forced_factor(*solution.forced_part, solution.alpha, j, t);
    tr.values.push_back(std::move(row));
  }
  return tr;
}

Trajectory investment_trajectory(const IOModel& model, const DerivedMatrices& derived,
                                 const ModalSolution& x_solution, const RealVector& grid) {
  if (x_solution.variable != Variable::gross_product)
    throw DomainError("investment needs a gross-product solution");
  if (x_solution.forced_part)
    throw DomainError("investment reduction I = B Omega X holds for closed models only");
  const RealMatrix bo = model.B * derived.Omega;
  Trajectory tr = evaluate_trajectory(x_solution, grid);
  for (auto& row : tr.values) row = bo * row;
  return tr;
}

RealVector equal_effective_rate_orders(const RealVector& lams, double alpha1) {
  if (lams.empty()) throw DimensionError("no eigenvalues given");
  for (double l : lams) {
    if (!(l > 0.0)) throw DomainError("eigenvalues must be positive");
    if (l == 1.0) throw DomainError("eigenvalue 1 makes the order condition degenerate");
  }
  const double l1 = std::log(lams.front());
  RealVector out;
  out.reserve(lams.size());
  out.push_back(alpha1);
  for (std::size_t k = 1; k < lams.size(); ++k) out.push_back(alpha1 * std::log(lams[k]) / l1);
  return out;
}

}  // namespace fracio
