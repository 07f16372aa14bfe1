#pragma once

// Dense LU with partial pivoting, shared by the real and complex paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace fracio::detail {

template <class T>
struct LU {
  std::size_t n = 0;
  std::vector<T> a;  // L below the diagonal (unit), U on and above
  std::vector<std::size_t> perm;
  int sign = 1;
  bool exact_zero_pivot = false;
};

// Factor a row-major n x n matrix. A pivot that is exactly zero is replaced
// by `zero_pivot` (useful for inverse iteration) and flagged.
template <class T>
LU<T> lu_factor(std::vector<T> a, std::size_t n, T zero_pivot = T(0)) {
  using std::abs;
  LU<T> f;
  f.n = n;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    auto best = abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto v = abs(a[i * n + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    if (a[k * n + k] == T(0)) {
      f.exact_zero_pivot = true;
      a[k * n + k] = zero_pivot;
      if (zero_pivot == T(0)) continue;
    }
    const T pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m = a[i * n + k] / pivot;
      a[i * n + k] = m;
      if (m == T(0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
    }
  }
  f.a = std::move(a);
  return f;
}

template <class T>
T lu_determinant(const LU<T>& f) {
  T d = T(f.sign);
  for (std::size_t i = 0; i < f.n; ++i) d *= f.a[i * f.n + i];
  return d;
}

template <class T>
std::vector<T> lu_solve(const LU<T>& f, const std::vector<T>& b) {
  const std::size_t n = f.n;
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.a[i * n + j] * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.a[i * n + j] * x[j];
    x[i] /= f.a[i * n + i];
  }
  return x;
}

}  // namespace fracio::detail
