#include "r0col/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace r0col {

template <typename T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

template <typename T>
DenseMatrix<T> operator+(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::InvalidArgument, "matrix sum shape mismatch");
  DenseMatrix<T> c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

template <typename T>
DenseMatrix<T> operator-(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::InvalidArgument, "matrix difference shape mismatch");
  DenseMatrix<T> c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

template <typename T>
DenseMatrix<T> operator*(T s, const DenseMatrix<T>& a) {
  DenseMatrix<T> c = a;
  for (auto& v : c.data()) v *= s;
  return c;
}

template <typename T>
std::vector<T> multiply(const DenseMatrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    T acc{};
    for (std::size_t j = 0; j < x.size(); ++j) acc += ai[j] * x[j];
    y[i] = acc;
  }
  return y;
}

template <typename T>
double inf_norm(const DenseMatrix<T>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (const auto& v : a.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

template <typename T>
double inf_norm(std::span<const T> x) {
  double best = 0.0;
  for (const auto& v : x) best = std::max(best, static_cast<double>(std::abs(v)));
  return best;
}

// ---------------------------------------------------------------------------

template <typename T>
LUFactorization<T> lu_factor(DenseMatrix<T> a, double singular_tol) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "lu_factor needs a square matrix");
  if (singular_tol < 0.0) throw Error(ErrorCode::InvalidArgument, "singular_tol must be >= 0");
  const std::size_t n = a.rows();
  const double norm = inf_norm(a);
  double max_a = 0.0;
  for (const auto& v : a.data()) max_a = std::max(max_a, static_cast<double>(std::abs(v)));
  const double threshold = singular_tol * norm;

  LUFactorization<T> lu;
  lu.permutation.resize(n);
  for (std::size_t i = 0; i < n; ++i) lu.permutation[i] = i;

  double max_u = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= threshold || best == 0.0) {
      throw Error(ErrorCode::SingularMatrix,
                  "pivot " + std::to_string(best) + " at column " + std::to_string(k));
    }
    if (p != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(p).begin());
      std::swap(lu.permutation[k], lu.permutation[p]);
      lu.parity = -lu.parity;
    }
    const T pivot = a(k, k);
    auto rk = a.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = a.row(i);
      const T factor = ri[k] / pivot;
      ri[k] = factor;
      if (factor == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= factor * rk[j];
    }
    for (std::size_t j = k; j < n; ++j) max_u = std::max(max_u, static_cast<double>(std::abs(rk[j])));
  }
  lu.pivot_growth = max_a > 0.0 ? max_u / max_a : 1.0;
  lu.factors = std::move(a);
  return lu;
}

template <typename T>
void lu_solve_in_place(const LUFactorization<T>& lu, std::span<T> x) {
  const std::size_t n = lu.order();
  if (x.size() != n) throw Error(ErrorCode::InvalidArgument, "lu_solve dimension mismatch");
  std::vector<T> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[lu.permutation[i]];
  const auto& f = lu.factors;
  for (std::size_t i = 1; i < n; ++i) {
    auto fi = f.row(i);
    T acc = y[i];
    for (std::size_t j = 0; j < i; ++j) acc -= fi[j] * y[j];
    y[i] = acc;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    auto fi = f.row(ii);
    T acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= fi[j] * y[j];
    y[ii] = acc / fi[ii];
  }
  std::copy(y.begin(), y.end(), x.begin());
}

template <typename T>
std::vector<T> lu_solve(const LUFactorization<T>& lu, std::span<const T> b) {
  std::vector<T> x(b.begin(), b.end());
  lu_solve_in_place<T>(lu, x);
  return x;
}

template <typename T>
T determinant(const LUFactorization<T>& lu) {
  T det = static_cast<double>(lu.parity);
  for (std::size_t i = 0; i < lu.order(); ++i) det *= lu.factors(i, i);
  return det;
}

template <typename T>
DenseMatrix<T> lu_solve_matrix(const LUFactorization<T>& lu, const DenseMatrix<T>& b) {
  const std::size_t n = lu.order();
  if (b.rows() != n) throw Error(ErrorCode::InvalidArgument, "lu_solve_matrix dimension mismatch");
  DenseMatrix<T> x(n, b.cols());
  std::vector<T> col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    lu_solve_in_place<T>(lu, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
  }
  return x;
}

// ---------------------------------------------------------------------------

namespace {

// Diagonal similarity by powers of two so that row and column norms are
// comparable; leaves eigenvalues unchanged.
void balance(Matrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
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
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (no accumulation).
void reduce_to_hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;
    double h = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / scale;
      h += v[i] * v[i];
    }
    const double g = v[k + 1] > 0.0 ? -std::sqrt(h) : std::sqrt(h);
    h -= v[k + 1] * g;
    v[k + 1] -= g;
    // P = I − v vᵀ / h.  A ← P A P.
    for (std::size_t j = k; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) f += v[i] * a(i, j);
      f /= h;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= f * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto ai = a.row(i);
      double f = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) f += v[j] * ai[j];
      f /= h;
      for (std::size_t j = k + 1; j < n; ++j) ai[j] -= f * v[j];
    }
    a(k + 1, k) = scale * g;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

double sign_of(double magnitude, double sign) { return sign >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
CVector hessenberg_qr(Matrix& a, double tol, int max_sweeps) {
  const int n = static_cast<int>(a.rows());
  CVector w(static_cast<std::size_t>(n));
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  // Absolute floor for deflation. Without it a cluster of (near-)zero
  // eigenvalues, where both diagonal neighbours are tiny, never deflates.
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = std::max(anorm * eps * eps, std::numeric_limits<double>::min());

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= std::max(tol * s, floor)) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[nn--] = Complex(x + t, 0.0);
      } else {
        double y = a(nn - 1, nn - 1);
        double ww = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + ww;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            w[nn - 1] = w[nn] = Complex(x + z, 0.0);
            if (z != 0.0) w[nn] = Complex(x - ww / z, 0.0);
          } else {
            w[nn] = Complex(x + p, -z);
            w[nn - 1] = std::conj(w[nn]);
          }
          nn -= 2;
        } else {
          if (its == max_sweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "QR iteration did not deflate eigenvalue " + std::to_string(nn) + " in " +
                            std::to_string(max_sweeps) + " sweeps");
          }
          if (its > 0 && its % 10 == 0) {
            // exceptional shift
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            ww = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= std::numeric_limits<double>::epsilon() * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a(i + 2, i) = 0.0;
            if (i != m) a(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
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
              if (k + 1 != nn) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k + 1 != nn) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

}  // namespace

EigenList eigenvalues_dense(const Matrix& a, double tol, int max_sweeps) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "eigenvalues_dense needs a square matrix");
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  }
  EigenList out;
  if (a.rows() == 0) return out;
  Matrix h = a;
  balance(h);
  reduce_to_hessenberg(h);
  out.values = hessenberg_qr(h, tol, max_sweeps);
  return out;
}

CVector inverse_iteration(const Matrix& a, Complex lambda, int iterations) {
  const std::size_t n = a.rows();
  const double scale = std::max(inf_norm(a), std::abs(lambda));
  Complex shift = lambda;
  std::optional<LUFactorization<Complex>> lu;
  for (int attempt = 0; attempt < 4 && !lu; ++attempt) {
    CMatrix shifted(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) shifted(i, j) = a(i, j);
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= shift;
    try {
      lu = lu_factor(std::move(shifted), 0.0);
    } catch (const Error&) {
      shift += Complex(1e-12 * scale * (attempt + 1), 0.0);
    }
  }
  if (!lu) throw Error(ErrorCode::SingularMatrix, "inverse iteration shift is an exact pole");

  CVector x(n, Complex(1.0, 0.0));
  for (int it = 0; it < std::max(iterations, 1); ++it) {
    lu_solve_in_place<Complex>(*lu, x);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    const Complex pivot = x[imax];
    if (pivot == Complex{}) break;
    for (auto& v : x) v /= pivot;
  }
  return x;
}

void attach_eigenvectors(const Matrix& a, EigenList& list) {
  CMatrix vecs(a.rows(), list.values.size());
  for (std::size_t k = 0; k < list.values.size(); ++k) {
    const CVector v = inverse_iteration(a, list.values[k]);
    for (std::size_t i = 0; i < v.size(); ++i) vecs(i, k) = v[i];
  }
  list.vectors = std::move(vecs);
}

PowerResult power_iteration(const LinearMap& apply, std::size_t n, double tol, int max_iter) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "power_iteration on an empty map");
  Vector x(n, 1.0);
  Vector y(n);
  double previous = std::numeric_limits<double>::quiet_NaN();
  PowerResult result;
  for (int it = 1; it <= max_iter; ++it) {
    apply(x, y);
    double xy = 0.0, xx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xy += x[i] * y[i];
      xx += x[i] * x[i];
    }
    const double rho = xy / xx;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(y[i] - rho * x[i]));
    const double ynorm = inf_norm(y);
    if (ynorm == 0.0) {
      result = {0.0, 0.0, x, it};
      return result;
    }
    const bool steady = std::abs(rho - previous) <= tol * std::abs(rho);
    const bool small_residual = residual <= tol * std::abs(rho);  // ‖x‖∞ = 1
    previous = rho;
    // Normalize so the largest-magnitude entry is +1.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(y[i]) > std::abs(y[imax])) imax = i;
    const double pivot = y[imax];
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / pivot;
    if (steady && small_residual) {
      result.modulus = std::abs(rho);
      result.rayleigh = rho;
      result.vector = x;
      result.iterations = it;
      return result;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration did not converge in " + std::to_string(max_iter) + " iterations");
}

// Explicit instantiations.
#define R0COL_INSTANTIATE(T)                                                             \
  template DenseMatrix<T> operator*(const DenseMatrix<T>&, const DenseMatrix<T>&);       \
  template DenseMatrix<T> operator+(const DenseMatrix<T>&, const DenseMatrix<T>&);       \
  template DenseMatrix<T> operator-(const DenseMatrix<T>&, const DenseMatrix<T>&);       \
  template DenseMatrix<T> operator*(T, const DenseMatrix<T>&);                           \
  template std::vector<T> multiply(const DenseMatrix<T>&, std::span<const T>);           \
  template double inf_norm(const DenseMatrix<T>&);                                       \
  template double inf_norm(std::span<const T>);                                          \
  template LUFactorization<T> lu_factor(DenseMatrix<T>, double);                         \
  template std::vector<T> lu_solve(const LUFactorization<T>&, std::span<const T>);       \
  template void lu_solve_in_place(const LUFactorization<T>&, std::span<T>);              \
  template T determinant(const LUFactorization<T>&);                                     \
  template DenseMatrix<T> lu_solve_matrix(const LUFactorization<T>&, const DenseMatrix<T>&);

R0COL_INSTANTIATE(double)
R0COL_INSTANTIATE(Complex)

#undef R0COL_INSTANTIATE

}  // namespace r0col
