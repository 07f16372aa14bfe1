#pragma once

// Small dense real matrices (n <= 16) with complex eigendecomposition and
// Frobenius-Perron analysis. Everything is value-semantic and pure.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace fracio {

using complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<complex>;

class RealMatrix {
 public:
  RealMatrix() = default;
  explicit RealMatrix(std::size_t n, double fill = 0.0);

  /// Throws DimensionError for ragged or non-square input and DomainError
  /// for non-finite entries.
  static RealMatrix from_rows(const std::vector<RealVector>& rows);
  static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static RealMatrix identity(std::size_t n);
  static RealMatrix diagonal(const RealVector& d);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  [[nodiscard]] const std::vector<double>& data() const noexcept { return a_; }
  [[nodiscard]] std::vector<RealVector> rows() const;

  [[nodiscard]] RealMatrix transpose() const;
  [[nodiscard]] double trace() const;
  [[nodiscard]] double max_abs() const;
  /// Maximum absolute row sum.
  [[nodiscard]] double norm_inf() const;
  [[nodiscard]] bool is_finite() const;

  RealMatrix& operator+=(const RealMatrix& other);
  RealMatrix& operator-=(const RealMatrix& other);
  RealMatrix& operator*=(double s);

  friend RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
  friend RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
  friend RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
  friend RealMatrix operator*(double s, RealMatrix a) { return a *= s; }
  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend RealVector operator*(const RealMatrix& a, const RealVector& x);
  friend ComplexVector operator*(const RealMatrix& a, const ComplexVector& x);
  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Largest |a_ij - b_ij|; DimensionError when sizes differ.
[[nodiscard]] double max_abs_diff(const RealMatrix& a, const RealMatrix& b);

/// True when |det M| <= 1e-12 * (max |m_ij|)^n.
[[nodiscard]] bool is_singular(const RealMatrix& m);

[[nodiscard]] double determinant(const RealMatrix& m);

/// Throws SingularMatrixError (carrying |det|) when is_singular(m).
[[nodiscard]] RealMatrix invert(const RealMatrix& m);

/// Solves m x = b. Same singularity rule as invert.
[[nodiscard]] RealVector solve(const RealMatrix& m, const RealVector& b);

struct BasisSolve {
  ComplexVector coefficients;
  /// 1-norm condition number of the basis matrix.
  double condition = 0.0;
};

/// Expresses `target` in the basis given by `columns` (each an n-vector).
/// No conditioning threshold is applied here; callers decide.
[[nodiscard]] BasisSolve solve_in_basis(const std::vector<ComplexVector>& columns,
                                        const ComplexVector& target);

struct EigenPair {
  complex value;
  /// Unit 2-norm; the first component of largest modulus is real positive.
  ComplexVector vector;
};

/// Rescales to unit 2-norm and rotates the first component of largest
/// modulus onto the positive real axis.
void normalize_eigenvector(ComplexVector& v);

/// Relative separation below which two eigenvalues count as repeated.
inline constexpr double kEigenSeparation = 1e-8;

/// Eigenvalues from balanced Hessenberg + shifted QR, sorted by descending
/// real part, then descending imaginary part. No degeneracy check.
[[nodiscard]] ComplexVector eigenvalues(const RealMatrix& m);

/// Eigenpairs in the order of eigenvalues(). Conjugate eigenvalues carry
/// conjugate vectors. Throws DegenerateSpectrumError for repeated values.
[[nodiscard]] std::vector<EigenPair> eig(const RealMatrix& m);

struct PerronResult {
  double value = 0.0;
  /// Nonnegative, sums to one.
  RealVector vector;
  /// Set when entries in [-1e-12, 0) were tolerated.
  bool small_negatives = false;
};

/// Frobenius-Perron number and vector of an entrywise nonnegative matrix.
/// Throws NotNonnegativeError for entries < -1e-12 and NonDominantError when
/// the modulus-maximal eigenvalue is not real positive.
[[nodiscard]] PerronResult perron(const RealMatrix& m);

/// Coefficients c_0..c_n of det(lambda E - M) = sum c_k lambda^k (c_n = 1).
[[nodiscard]] RealVector char_poly(const RealMatrix& m);

/// Roots of the characteristic polynomial, found without the QR path:
/// closed form for n <= 2, Aberth iteration plus Newton polishing on
/// det(M - lambda E) otherwise. Same ordering as eigenvalues().
[[nodiscard]] ComplexVector char_poly_roots(const RealMatrix& m);

struct SpectralData {
  std::vector<EigenPair> pairs;
  double perron_value = 0.0;
  RealVector perron_vector;
};

[[nodiscard]] SpectralData spectral_data(const RealMatrix& m);

}  // namespace fracio
