#include "fracio/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "fracio/errors.hpp"
#include "lu.hpp"

namespace fracio {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSingularity = 1e-12;
constexpr double kNegativeTolerance = 1e-12;
constexpr std::size_t kMaxCharPolyDim = 16;

void require_same(const RealMatrix& a, const RealMatrix& b) {
  if (a.n() != b.n())
    throw DimensionError("matrix sizes differ: " + std::to_string(a.n()) + " vs " +
                         std::to_string(b.n()));
}

void require_nonempty(const RealMatrix& m) {
  if (m.empty()) throw DimensionError("empty matrix");
}

bool eigen_order(const complex& a, const complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

// Parlett-Reinsch balancing; similarity transform, eigenvalues unchanged.
void balance(std::vector<double>& a, std::size_t n) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a[j * n + i]);
        r += std::abs(a[i * n + j]);
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] *= g;
        for (std::size_t j = 0; j < n; ++j) a[j * n + i] *= f;
      }
    }
  }
}

// Reduction to upper Hessenberg form by stabilized elimination.
void hessenberg(std::vector<double>& a, std::size_t n) {
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    std::size_t piv = m;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(a[j * n + m - 1]) > std::abs(x)) {
        x = a[j * n + m - 1];
        piv = j;
      }
    }
    if (piv != m) {
      for (std::size_t j = m - 1; j < n; ++j) std::swap(a[piv * n + j], a[m * n + j]);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[j * n + piv], a[j * n + m]);
    }
    if (x == 0.0) continue;
    for (std::size_t i = m + 1; i < n; ++i) {
      double y = a[i * n + m - 1];
      if (y == 0.0) continue;
      y /= x;
      a[i * n + m - 1] = 0.0;
      for (std::size_t j = m; j < n; ++j) a[i * n + j] -= y * a[m * n + j];
      for (std::size_t j = 0; j < n; ++j) a[j * n + m] += y * a[j * n + i];
    }
  }
}

// Francis double-shift QR on an upper Hessenberg matrix. 1-based indexing
// inside to keep the deflation logic readable.
ComplexVector hessenberg_qr(std::vector<double> h, std::size_t n) {
  auto a = [&](int i, int j) -> double& { return h[(i - 1) * n + (j - 1)]; };
  const int nn_total = static_cast<int>(n);
  std::vector<double> wr(n + 1), wi(n + 1);
  double anorm = 0.0;
  for (int i = 1; i <= nn_total; ++i)
    for (int j = std::max(i - 1, 1); j <= nn_total; ++j) anorm += std::abs(a(i, j));

  int nn = nn_total;
  double t = 0.0;
  double p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, z = 0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn--] = 0.0;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          nn -= 2;
        } else {
          if (its == 60) throw ConvergenceError("QR iteration did not converge");
          if (its == 10 || its == 20 || its == 40) {
            // exceptional shift
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = std::copysign(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {wr[i + 1], wi[i + 1]};
  return out;
}

}  // namespace

void normalize_eigenvector(ComplexVector& v) {
  double best = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      at = i;
    }
  }
  double norm = 0.0;
  for (const auto& c : v) norm += std::norm(c);
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  const complex rot = std::conj(v[at]) / (std::abs(v[at]) * norm);
  for (auto& c : v) c *= rot;
  v[at] = {std::abs(v[at]), 0.0};
}

namespace {

ComplexVector inverse_iteration(const RealMatrix& m, complex lam) {
  const std::size_t n = m.n();
  const double scale = std::max(m.norm_inf(), std::numeric_limits<double>::min());
  std::vector<complex> shifted(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) shifted[i * n + j] = m(i, j);
  for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= lam;
  const auto f = detail::lu_factor(shifted, n, complex(kEps * scale, 0.0));
  // Fixed, deliberately unstructured start so no eigenvector is missed.
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.0 + 1.7 * double(i));
  for (int it = 0; it < 6; ++it) {
    x = detail::lu_solve(f, x);
    double norm = 0.0;
    for (const auto& c : x) norm = std::max(norm, std::abs(c));
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw ConvergenceError("inverse iteration failed");
    for (auto& c : x) c /= norm;
    normalize_eigenvector(x);
    const ComplexVector mx = m * x;
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(mx[i] - lam * x[i]));
    if (it >= 1 && res <= 1e-13 * scale) break;
  }
  normalize_eigenvector(x);
  if (lam.imag() == 0.0)
    for (auto& c : x) c = {c.real(), 0.0};
  return x;
}

void check_separation(const ComplexVector& ev) {
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      const double scale = std::max(std::abs(ev[i]), std::abs(ev[j]));
      if (std::abs(ev[i] - ev[j]) < kEigenSeparation * scale || scale == 0.0)
        throw DegenerateSpectrumError("repeated eigenvalue near (" +
                                      std::to_string(ev[i].real()) + ", " +
                                      std::to_string(ev[i].imag()) + ")");
    }
}

using ldcomplex = std::complex<long double>;

ldcomplex poly_eval(const std::vector<long double>& c, ldcomplex z, ldcomplex* deriv) {
  ldcomplex p = c.back();
  ldcomplex d = 0.0L;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    d = d * z + p;
    p = p * z + c[k];
  }
  *deriv = d;
  return p;
}

// Faddeev-LeVerrier in long double on a pre-scaled matrix.
std::vector<long double> faddeev_leverrier(const std::vector<long double>& a, std::size_t n) {
  std::vector<long double> c(n + 1, 0.0L);
  c[n] = 1.0L;
  std::vector<long double> mk(n * n, 0.0L), am(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += c[n - k + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long double acc = 0.0L;
        for (std::size_t l = 0; l < n; ++l) acc += a[i * n + l] * mk[l * n + j];
        am[i * n + j] = acc;
      }
    long double tr = 0.0L;
    for (std::size_t i = 0; i < n; ++i) tr += am[i * n + i];
    c[n - k] = -tr / static_cast<long double>(k);
    mk = am;
  }
  return c;
}

std::vector<ldcomplex> aberth(const std::vector<long double>& c) {
  const std::size_t n = c.size() - 1;
  long double bound = 0.0L;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k]));
  const long double radius = std::max(1e-3L, std::min(1.0L + bound, 2.0L));
  std::vector<ldcomplex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double ang = 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(radius, ang);
  }
  for (int it = 0; it < 1000; ++it) {
    long double worst = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      ldcomplex d;
      const ldcomplex p = poly_eval(c, z[i], &d);
      if (p == 0.0L) continue;
      const ldcomplex ratio = p / d;
      ldcomplex sum = 0.0L;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0L / (z[i] - z[j]);
      const ldcomplex step = ratio / (1.0L - ratio * sum);
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[i])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

// Newton on f(l) = det(M - l E): f/f' = -1 / trace((M - l E)^-1).
ldcomplex polish_root(const std::vector<long double>& a, std::size_t n, ldcomplex lam) {
  for (int it = 0; it < 4; ++it) {
    std::vector<ldcomplex> shifted(n * n);
    for (std::size_t i = 0; i < n * n; ++i) shifted[i] = a[i];
    for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= lam;
    const auto f = detail::lu_factor(shifted, n);
    if (f.exact_zero_pivot) return lam;
    ldcomplex tr = 0.0L;
    std::vector<ldcomplex> e(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(e.begin(), e.end(), ldcomplex(0.0L));
      e[j] = 1.0L;
      tr += detail::lu_solve(f, e)[j];
    }
    if (tr == 0.0L) return lam;
    const ldcomplex step = 1.0L / tr;
    lam += step;
    if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(lam))) break;
  }
  return lam;
}

}  // namespace

RealMatrix::RealMatrix(std::size_t n, double fill) : n_(n), a_(n * n, fill) {}

RealMatrix RealMatrix::from_rows(const std::vector<RealVector>& rows) {
  const std::size_t n = rows.size();
  RealMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw DimensionError("row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) throw DomainError("non-finite matrix entry");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<RealVector> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(const RealVector& d) {
  RealMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<RealVector> RealMatrix::rows() const {
  std::vector<RealVector> out(n_, RealVector(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double RealMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double RealMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool RealMatrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

RealMatrix& RealMatrix::operator+=(const RealMatrix& other) {
  require_same(*this, other);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& other) {
  require_same(*this, other);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  require_same(a, b);
  const std::size_t n = a.n();
  RealMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RealVector operator*(const RealMatrix& a, const RealVector& x) {
  if (x.size() != a.n())
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match matrix size " + std::to_string(a.n()));
  RealVector y(a.n(), 0.0);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

ComplexVector operator*(const RealMatrix& a, const ComplexVector& x) {
  if (x.size() != a.n())
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match matrix size " + std::to_string(a.n()));
  ComplexVector y(a.n(), 0.0);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  require_same(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

double determinant(const RealMatrix& m) {
  require_nonempty(m);
  return detail::lu_determinant(detail::lu_factor(m.data(), m.n()));
}

bool is_singular(const RealMatrix& m) {
  require_nonempty(m);
  const double det = std::abs(determinant(m));
  const double tol = kSingularity * std::pow(m.max_abs(), static_cast<double>(m.n()));
  return !(det > tol);
}

RealMatrix invert(const RealMatrix& m) {
  require_nonempty(m);
  const std::size_t n = m.n();
  const auto f = detail::lu_factor(m.data(), n);
  const double det = std::abs(detail::lu_determinant(f));
  if (!(det > kSingularity * std::pow(m.max_abs(), static_cast<double>(n))))
    throw SingularMatrixError("matrix is singular (|det| = " + std::to_string(det) + ")", det);
  RealMatrix inv(n);
  RealVector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const RealVector col = detail::lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

RealVector solve(const RealMatrix& m, const RealVector& b) {
  require_nonempty(m);
  if (b.size() != m.n()) throw DimensionError("right-hand side length mismatch");
  const auto f = detail::lu_factor(m.data(), m.n());
  const double det = std::abs(detail::lu_determinant(f));
  if (!(det > kSingularity * std::pow(m.max_abs(), static_cast<double>(m.n()))))
    throw SingularMatrixError("matrix is singular (|det| = " + std::to_string(det) + ")", det);
  return detail::lu_solve(f, b);
}

BasisSolve solve_in_basis(const std::vector<ComplexVector>& columns, const ComplexVector& target) {
  const std::size_t n = columns.size();
  if (n == 0 || target.size() != n) throw DimensionError("basis size mismatch");
  std::vector<complex> a(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != n) throw DimensionError("basis vector length mismatch");
    for (std::size_t i = 0; i < n; ++i) a[i * n + j] = columns[j][i];
  }
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i * n + j]);
    norm1 = std::max(norm1, s);
  }
  const auto f = detail::lu_factor(a, n);
  BasisSolve out;
  if (f.exact_zero_pivot) {
    out.condition = std::numeric_limits<double>::infinity();
    out.coefficients.assign(n, complex(std::nan(""), 0.0));
    return out;
  }
  // Exact inverse 1-norm; n is small.
  double inv_norm1 = 0.0;
  ComplexVector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), complex(0.0));
    e[j] = 1.0;
    const auto col = detail::lu_solve(f, e);
    double s = 0.0;
    for (const auto& c : col) s += std::abs(c);
    inv_norm1 = std::max(inv_norm1, s);
  }
  out.condition = norm1 * inv_norm1;
  out.coefficients = detail::lu_solve(f, target);
  return out;
}

ComplexVector eigenvalues(const RealMatrix& m) {
  require_nonempty(m);
  if (!m.is_finite()) throw DomainError("non-finite matrix entry");
  std::vector<double> h = m.data();
  balance(h, m.n());
  hessenberg(h, m.n());
  ComplexVector ev = hessenberg_qr(std::move(h), m.n());
  std::sort(ev.begin(), ev.end(), eigen_order);
  return ev;
}

std::vector<EigenPair> eig(const RealMatrix& m) {
  const ComplexVector ev = eigenvalues(m);
  check_separation(ev);
  std::vector<EigenPair> pairs;
  pairs.reserve(ev.size());
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const complex lam = ev[k];
    // Partner of a conjugate pair: conjugate the vector already computed.
    if (lam.imag() < 0.0 && k > 0 && ev[k - 1] == std::conj(lam)) {
      ComplexVector v = pairs.back().vector;
      for (auto& c : v) c = std::conj(c);
      pairs.push_back({lam, std::move(v)});
      continue;
    }
    pairs.push_back({lam, inverse_iteration(m, lam)});
  }
  return pairs;
}

PerronResult perron(const RealMatrix& m) {
  require_nonempty(m);
  const std::size_t n = m.n();
  PerronResult out;
  RealMatrix clipped = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (v < -kNegativeTolerance)
        throw NotNonnegativeError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  ") is negative: " + std::to_string(v));
      if (v < 0.0) {
        out.small_negatives = true;
        clipped(i, j) = 0.0;
      }
    }
  if (clipped.max_abs() == 0.0) {
    out.value = 0.0;
    out.vector.assign(n, 1.0 / static_cast<double>(n));
    return out;
  }

  const ComplexVector ev = eigenvalues(m);
  double rho = 0.0;
  for (const auto& l : ev) rho = std::max(rho, std::abs(l));
  double s = -1.0;
  for (const auto& l : ev)
    if (std::abs(l.imag()) <= 1e-10 * rho && l.real() > 0.0) s = std::max(s, l.real());
  if (rho > 0.0 && s < rho * (1.0 - 1e-10))
    throw NonDominantError("modulus-maximal eigenvalue is not real positive");
  if (rho == 0.0) s = 0.0;
  out.value = s;

  // Inverse iteration just above s: ((s + d) E - M)^-1 is entrywise
  // nonnegative, so the iterates stay in the nonnegative cone.
  const double d = 1e-10 * std::max(s, clipped.norm_inf());
  RealMatrix shifted = RealMatrix::identity(n) * (s + d) - clipped;
  const auto f = detail::lu_factor(shifted.data(), n, kEps * clipped.norm_inf());
  RealVector x(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < 200; ++it) {
    RealVector y = detail::lu_solve(f, x);
    double sum = 0.0;
    for (double& v : y) {
      v = std::max(v, 0.0);
      sum += v;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) throw ConvergenceError("Perron iteration failed");
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= sum;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    if (it >= 1 && change <= 1e-15) break;
  }
  out.vector = std::move(x);
  return out;
}

RealVector char_poly(const RealMatrix& m) {
  require_nonempty(m);
  const std::size_t n = m.n();
  if (n > kMaxCharPolyDim) throw DomainError("characteristic polynomial limited to n <= 16");
  std::vector<long double> a(m.data().begin(), m.data().end());
  const auto c = faddeev_leverrier(a, n);
  return RealVector(c.begin(), c.end());
}

ComplexVector char_poly_roots(const RealMatrix& m) {
  require_nonempty(m);
  const std::size_t n = m.n();
  if (n > kMaxCharPolyDim) throw DomainError("characteristic polynomial limited to n <= 16");
  if (!m.is_finite()) throw DomainError("non-finite matrix entry");
  ComplexVector roots;
  if (n == 1) {
    roots = {complex(m(0, 0), 0.0)};
  } else if (n == 2) {
    // lambda^2 - tr lambda + det = 0
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double half = 0.5 * (m(0, 0) - m(1, 1));
    const double disc = half * half + m(0, 1) * m(1, 0);
    if (disc >= 0.0) {
      const double q = 0.5 * tr + std::copysign(std::sqrt(disc), tr);
      const double other = q != 0.0 ? det / q : 0.5 * tr - std::copysign(std::sqrt(disc), tr);
      roots = {complex(q, 0.0), complex(other, 0.0)};
    } else {
      const double im = std::sqrt(-disc);
      roots = {complex(0.5 * tr, im), complex(0.5 * tr, -im)};
    }
  } else {
    const double scale = std::max(m.norm_inf(), std::numeric_limits<double>::min());
    std::vector<long double> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i] / scale;
    const auto c = faddeev_leverrier(a, n);
    const auto z = aberth(c);
    roots.reserve(n);
    for (const auto& zi : z) {
      const ldcomplex r = polish_root(a, n, zi);
      complex root(static_cast<double>(r.real() * scale), static_cast<double>(r.imag() * scale));
      if (std::abs(root.imag()) <= 1e-12 * scale) root = {root.real(), 0.0};
      roots.push_back(root);
    }
    // The polynomial is real: make conjugate partners exact mirrors.
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (roots[i].imag() <= 0.0) continue;
      std::size_t best = n;
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j] && roots[j].imag() < 0.0 &&
            (best == n || std::abs(roots[j] - std::conj(roots[i])) <
                              std::abs(roots[best] - std::conj(roots[i]))))
          best = j;
      if (best == n) continue;
      used[best] = true;
      const complex avg = 0.5 * (roots[i] + std::conj(roots[best]));
      roots[i] = avg;
      roots[best] = std::conj(avg);
    }
  }
  std::sort(roots.begin(), roots.end(), eigen_order);
  return roots;
}

SpectralData spectral_data(const RealMatrix& m) {
  SpectralData out;
  out.pairs = eig(m);
  const PerronResult p = perron(m);
  out.perron_value = p.value;
  out.perron_vector = p.vector;
  return out;
}

}  // namespace fracio
