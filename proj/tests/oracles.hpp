#pragma once

// Test-side reference computations, independent of the library code paths
// they check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "r0col/linalg.hpp"

namespace oracle {

// Bisection on a sign change of f over [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-15) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > tol * std::max(1.0, std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (depth > 40 || std::abs(left + right - whole) <= 15.0 * tol)
          return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, depth + 1) + rec(mid, hi, fmid, frm, fhi, right, depth + 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 0);
}

// Trapezoid rule with m intervals.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t m) {
  const double h = (b - a) / static_cast<double>(m);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t k = 1; k < m; ++k) s += f(a + h * static_cast<double>(k));
  return s * h;
}

// I₀(x) = Σ (x/2)^{2k} / (k!)².
inline double bessel_i0(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= (x / 2.0) * (x / 2.0) / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
  }
  return sum;
}

inline r0col::Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0,
                                   double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  r0col::Matrix m(rows, cols);
  for (auto& v : m.data()) v = u(rng);
  return m;
}

inline Eigen::MatrixXd to_eigen(const r0col::Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

inline std::vector<std::complex<double>> eigen_eigenvalues(const r0col::Matrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m), false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

inline double spectral_radius(const r0col::Matrix& m) {
  double r = 0.0;
  for (const auto& v : eigen_eigenvalues(m)) r = std::max(r, std::abs(v));
  return r;
}

// Largest distance after greedily pairing each value of `a` with its
// nearest unused value in `b`.
inline double match_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    std::size_t best = b.size();
    double d = INFINITY;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dj = std::abs(x - b[j]);
      if (dj < d) {
        d = dj;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

// Maximum of f on [a, b]: dense sampling, then golden-section refinement
// around the best sample.
inline double maximize(const std::function<double(double)>& f, double a, double b, std::size_t samples = 4001) {
  std::size_t best = 0;
  double fbest = -INFINITY;
  const double h = (b - a) / static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double v = f(a + h * static_cast<double>(k));
    if (v > fbest) {
      fbest = v;
      best = k;
    }
  }
  double lo = std::max(a, a + h * (static_cast<double>(best) - 1.0));
  double hi = std::min(b, a + h * (static_cast<double>(best) + 1.0));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 100 && hi - lo > 1e-15; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({fbest, f1, f2});
}

}  // namespace oracle
