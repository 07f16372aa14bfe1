#include "fracio/iomodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fracio/errors.hpp"

namespace fracio {
namespace {

bool all_finite(const RealVector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(const RealVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v[i]);
  }
  return s + ")";
}

RealMatrix eminus(const RealMatrix& A) { return RealMatrix::identity(A.n()) - A; }

void require_length(const RealMatrix& A, const RealVector& x) {
  if (A.empty() || x.size() != A.n())
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match matrix size " + std::to_string(A.n()));
}

}  // namespace

IOModel IOModel::make(RealMatrix A, RealMatrix B, RealVector alpha, RealVector Y0) {
  IOModel m;
  m.n = A.n();
  m.A = std::move(A);
  m.B = std::move(B);
  if (alpha.size() == 1 && m.n > 1) alpha.assign(m.n, alpha.front());
  m.alpha = std::move(alpha);
  m.Y0 = std::move(Y0);
  m.C0.assign(m.n, 0.0);
  m.consumption_rates.assign(m.n, 0.0);
  return m;
}

bool IOModel::uniform_order() const {
  return std::all_of(alpha.begin(), alpha.end(), [&](double a) { return a == alpha.front(); });
}

bool IOModel::closed() const {
  return std::all_of(C0.begin(), C0.end(), [](double c) { return c == 0.0; });
}

bool IOModel::needs_initial_rate() const {
  return std::any_of(alpha.begin(), alpha.end(), [](double a) { return a > 1.0; });
}

DerivedMatrices derive(const IOModel& model) {
  DerivedMatrices d;
  const RealMatrix ea = eminus(model.A);
  try {
    d.B_inv = invert(model.B);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("B is singular", e.determinant_magnitude());
  }
  try {
    d.EminusA_inv = invert(ea);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("E - A is singular", e.determinant_magnitude());
  }
  d.Lambda = ea * d.B_inv;
  d.Omega = d.B_inv * ea;
  d.S = model.B * d.EminusA_inv;
  return d;
}

RealVector intermediate_product(const RealMatrix& A, const RealVector& X) {
  require_length(A, X);
  return A * X;
}

RealVector final_from_gross(const RealMatrix& A, const RealVector& X) {
  require_length(A, X);
  RealVector y = A * X;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = X[i] - y[i];
  return y;
}

RealVector gross_from_final(const RealMatrix& A, const RealVector& Y) {
  require_length(A, Y);
  try {
    return solve(eminus(A), Y);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("E - A is singular", e.determinant_magnitude());
  }
}

std::vector<Finding> validate(const IOModel& model) {
  std::vector<Finding> out;
  auto fatal = [&](std::string m) { out.push_back({Severity::fatal, std::move(m)}); };
  auto warn = [&](std::string m) { out.push_back({Severity::warning, std::move(m)}); };
  auto info = [&](std::string m) { out.push_back({Severity::info, std::move(m)}); };

  const std::size_t n = model.n;
  if (n == 0) {
    fatal("n must be at least 1");
    return out;
  }
  auto check_len = [&](const char* name, std::size_t len) {
    if (len != n)
      fatal(std::string(name) + " has length " + std::to_string(len) + ", expected " +
            std::to_string(n));
  };
  if (model.A.n() != n) fatal("A is not " + std::to_string(n) + " x " + std::to_string(n));
  if (model.B.n() != n) fatal("B is not " + std::to_string(n) + " x " + std::to_string(n));
  check_len("alpha", model.alpha.size());
  check_len("Y0", model.Y0.size());
  if (model.Y0_rate) check_len("Y0_rate", model.Y0_rate->size());
  if (model.X0) check_len("X0", model.X0->size());
  check_len("C0", model.C0.size());
  check_len("consumption_rates", model.consumption_rates.size());
  if (has_fatal(out)) return out;

  if (!model.A.is_finite()) fatal("A has non-finite entries");
  if (!model.B.is_finite()) fatal("B has non-finite entries");
  for (const auto* v : {&model.alpha, &model.Y0, &model.C0, &model.consumption_rates})
    if (!all_finite(*v)) fatal("non-finite value in model vectors");
  if ((model.Y0_rate && !all_finite(*model.Y0_rate)) || (model.X0 && !all_finite(*model.X0)))
    fatal("non-finite value in model vectors");
  if (has_fatal(out)) return out;

  if (std::any_of(model.A.data().begin(), model.A.data().end(), [](double a) { return a < 0.0; }))
    fatal("A has negative entries");
  if (std::any_of(model.alpha.begin(), model.alpha.end(),
                  [](double a) { return !(a > 0.0 && a < 2.0); }))
    fatal("alpha out of (0,2)");
  if (std::any_of(model.C0.begin(), model.C0.end(), [](double c) { return c < 0.0; }))
    fatal("C0 has negative entries");
  if (is_singular(model.B)) fatal("B not invertible");
  const RealMatrix ea = eminus(model.A);
  const bool ea_singular = is_singular(ea);
  if (ea_singular) fatal("E - A not invertible");
  if (model.needs_initial_rate() && !model.Y0_rate) fatal("initial speed required for alpha>1");
  if (!model.needs_initial_rate() && model.Y0_rate) info("Y0_rate ignored: every alpha <= 1");

  try {
    double rho = 0.0;
    for (const auto& l : eigenvalues(model.A)) rho = std::max(rho, std::abs(l));
    if (rho >= 1.0) warn("A is not productive (spectral radius " + fmt(rho) + " >= 1)");
  } catch (const Error&) {
    warn("spectrum of A could not be computed");
  }

  if (!has_fatal(out)) {
    try {
      const RealMatrix S = model.B * invert(ea);
      const PerronResult p = perron(S);
      if (p.value > 0.0 && !model.closed()) {
        const double lambda_s = 1.0 / p.value;
        for (std::size_t k = 0; k < n; ++k)
          if (model.consumption_rates[k] >= lambda_s)
            warn("consumption rate r_" + std::to_string(k + 1) + " = " +
                 fmt(model.consumption_rates[k]) + " is not below lambda_s = " + fmt(lambda_s));
      }
    } catch (const Error& e) {
      warn(std::string("no Frobenius-Perron data for S: ") + e.what());
    }
  }

  if (model.X0 && !ea_singular) {
    const RealVector y = final_from_gross(model.A, *model.X0);
    double diff = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      diff = std::max(diff, std::abs(y[i] - model.Y0[i]));
      scale = std::max(scale, std::abs(model.Y0[i]));
    }
    if (diff > 1e-9 * scale)
      info("X0 and Y0 are independent initializations: (E - A) X0 = " + fmt(y) +
           " differs from Y0 = " + fmt(model.Y0));
  }
  return out;
}

bool has_fatal(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::fatal; });
}

const char* to_string(Severity s) {
  switch (s) {
    case Severity::fatal: return "fatal";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "?";
}

}  // namespace fracio
