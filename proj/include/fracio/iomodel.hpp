#pragma once

// The intersectoral economy: input data, derived system matrices and the
// static balance relations X = A X + Y.

#include <optional>
#include <string>
#include <vector>

#include "fracio/matrixcore.hpp"

namespace fracio {

struct IOModel {
  std::size_t n = 0;
  RealMatrix A;  // direct material costs
  RealMatrix B;  // incremental capital intensity
  RealVector alpha;
  RealVector Y0;
  std::optional<RealVector> Y0_rate;
  std::optional<RealVector> X0;
  RealVector C0;                 // zero vector for the closed model
  RealVector consumption_rates;  // diagonal of R

  /// Fills C0 and consumption_rates with zeros when left empty and expands a
  /// single-entry alpha to length n.
  static IOModel make(RealMatrix A, RealMatrix B, RealVector alpha, RealVector Y0);

  [[nodiscard]] bool uniform_order() const;
  [[nodiscard]] bool closed() const;
  [[nodiscard]] bool needs_initial_rate() const;
};

struct DerivedMatrices {
  RealMatrix Lambda;       // (E - A) B^-1
  RealMatrix Omega;        // B^-1 (E - A)
  RealMatrix S;            // B (E - A)^-1
  RealMatrix EminusA_inv;  // (E - A)^-1
  RealMatrix B_inv;
};

/// Throws SingularMatrixError naming B or E - A.
[[nodiscard]] DerivedMatrices derive(const IOModel& model);

/// Z = A X.
[[nodiscard]] RealVector intermediate_product(const RealMatrix& A, const RealVector& X);
/// Y = (E - A) X.
[[nodiscard]] RealVector final_from_gross(const RealMatrix& A, const RealVector& X);
/// X = (E - A)^-1 Y.
[[nodiscard]] RealVector gross_from_final(const RealMatrix& A, const RealVector& Y);

enum class Severity { fatal, warning, info };

struct Finding {
  Severity severity = Severity::fatal;
  std::string message;
};

/// Lists violated invariants. Never throws.
[[nodiscard]] std::vector<Finding> validate(const IOModel& model);

[[nodiscard]] bool has_fatal(const std::vector<Finding>& findings);

[[nodiscard]] const char* to_string(Severity s);

}  // namespace fracio
