#pragma once

// Dense real/complex linear algebra used by the collocation pencils:
// LU with partial pivoting, a Hessenberg/Francis-QR eigenvalue solver,
// inverse iteration and power iteration.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "r0col/error.hpp"

namespace r0col {

using Complex = std::complex<double>;

// Row-major dense matrix.
template <typename T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows);

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  std::span<T> data() noexcept { return entries_; }
  std::span<const T> data() const noexcept { return entries_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<Complex>;
using Vector = std::vector<double>;
using CVector = std::vector<Complex>;

template <typename T>
DenseMatrix<T>::DenseMatrix(std::initializer_list<std::initializer_list<T>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

template <typename T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <typename T>
DenseMatrix<T> operator+(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <typename T>
DenseMatrix<T> operator-(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <typename T>
DenseMatrix<T> operator*(T s, const DenseMatrix<T>& a);

template <typename T>
std::vector<T> multiply(const DenseMatrix<T>& a, std::span<const T> x);

template <typename T>
double inf_norm(const DenseMatrix<T>& a);
template <typename T>
double inf_norm(std::span<const T> x);
inline double inf_norm(const Vector& x) { return inf_norm(std::span<const double>(x)); }
inline double inf_norm(const CVector& x) { return inf_norm(std::span<const Complex>(x)); }

// ---------------------------------------------------------------------------
// LU with partial pivoting: P·A = L·U, L unit lower triangular stored below
// the diagonal of `factors`, U on and above it. Row i of P·A is row
// permutation[i] of A.
template <typename T>
struct LUFactorization {
  std::vector<std::size_t> permutation;
  DenseMatrix<T> factors;
  double pivot_growth = 1.0;  // max|U| / max|A|
  int parity = 1;             // sign of the permutation

  std::size_t order() const noexcept { return factors.rows(); }
};

inline constexpr double kDefaultSingularTol = 1e-12;

// Throws SingularMatrix when a pivot has magnitude <= singular_tol·‖A‖∞.
template <typename T>
LUFactorization<T> lu_factor(DenseMatrix<T> a, double singular_tol = kDefaultSingularTol);

template <typename T>
std::vector<T> lu_solve(const LUFactorization<T>& lu, std::span<const T> b);

template <typename T>
void lu_solve_in_place(const LUFactorization<T>& lu, std::span<T> x);

template <typename T>
T determinant(const LUFactorization<T>& lu);

// Returns A⁻¹·B, column by column.
template <typename T>
DenseMatrix<T> lu_solve_matrix(const LUFactorization<T>& lu, const DenseMatrix<T>& b);

// ---------------------------------------------------------------------------
struct EigenList {
  CVector values;
  std::optional<CMatrix> vectors;  // columns, one per value, when requested
};

inline constexpr double kDefaultDeflationTol = std::numeric_limits<double>::epsilon();
inline constexpr int kDefaultMaxSweeps = 60;

// All eigenvalues of a real square matrix: balancing, Householder reduction
// to Hessenberg form, Francis double-shift QR with deflation. Real input
// yields exact conjugate pairs; real eigenvalues have a zero imaginary part.
EigenList eigenvalues_dense(const Matrix& a, double tol = kDefaultDeflationTol,
                            int max_sweeps = kDefaultMaxSweeps);

// Eigenvector for an (approximate) eigenvalue via inverse iteration on
// (A − λI), one complex LU. Normalized to unit ∞-norm with the largest entry
// real and positive.
CVector inverse_iteration(const Matrix& a, Complex lambda, int iterations = 3);

// Fills `list.vectors` by calling inverse_iteration for every value.
void attach_eigenvectors(const Matrix& a, EigenList& list);

// ---------------------------------------------------------------------------
using LinearMap = std::function<void(std::span<const double> in, std::span<double> out)>;

struct PowerResult {
  double modulus = 0.0;
  double rayleigh = 0.0;  // signed Rayleigh quotient at convergence
  Vector vector;          // unit ∞-norm
  int iterations = 0;
};

// Dominant eigenvalue modulus of a real linear map, started from the ones
// vector. Converged when the Rayleigh quotient ρ changes by at most tol
// (relative) and the relative residual ‖Ax − ρx‖∞/|ρ| is at most tol.
// Throws NoConvergence after max_iter applications otherwise; a complex or
// ±-paired dominant eigenvalue never converges.
PowerResult power_iteration(const LinearMap& apply, std::size_t n, double tol, int max_iter);

}  // namespace r0col
