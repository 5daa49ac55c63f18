#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "properties.hpp"
#include "r0col/linalg.hpp"

using namespace r0col;

namespace {

std::vector<double> sorted_real(const CVector& v) {
  std::vector<double> out;
  for (const auto& z : v) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lu_factor: identity and forced pivot") {
  const auto id = lu_factor(Matrix::identity(3));
  CHECK(id.factors == Matrix::identity(3));
  CHECK(id.permutation == std::vector<std::size_t>{0, 1, 2});

  const auto swap = lu_factor(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(swap.permutation == std::vector<std::size_t>{1, 0});
  CHECK(swap.factors == Matrix::identity(2));
  CHECK(swap.parity == -1);
}

TEST_CASE("lu_factor: random 8x8 reconstruction and solve") {
  std::mt19937_64 rng(8);
  const Matrix a = oracle::random_matrix(8, 8, rng);
  const auto lu = lu_factor(a);
  double worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) s += (k == i ? 1.0 : lu.factors(i, k)) * lu.factors(k, j);
      worst = std::max(worst, std::abs(a(lu.permutation[i], j) - s));
    }
  CHECK(worst <= 1e-13);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t k = 0; k < i; ++k) CHECK(std::abs(lu.factors(i, k)) <= 1.0);

  const Vector x0 = {1.0, -2.0, 3.0, 0.5, -0.25, 4.0, 0.0, 1.5};
  const Vector b = multiply(a, std::span<const double>(x0));
  const Vector x = lu_solve(lu, std::span<const double>(b));
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(x[i] - x0[i]) <= 1e-11);
}

TEST_CASE("lu_solve: trivial systems") {
  const Vector b = {1.0, 2.0, 3.0};
  CHECK(lu_solve(lu_factor(Matrix::identity(3)), std::span<const double>(b)) == b);
  const Vector b2 = {2.0, 4.0};
  const Vector x = lu_solve(lu_factor(Matrix{{2.0, 0.0}, {0.0, 4.0}}), std::span<const double>(b2));
  CHECK(x == Vector{1.0, 1.0});
}

TEST_CASE("lu_factor: singular matrix is reported") {
  CHECK_THROWS_AS(lu_factor(Matrix{{1.0, 2.0}, {2.0, 4.0}}), Error);
  try {
    lu_factor(Matrix{{1.0, 2.0}, {2.0, 4.0}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("eigenvalues_dense: small known spectra") {
  CHECK(sorted_real(eigenvalues_dense(Matrix{{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 3.0}}).values) ==
        std::vector<double>{1.0, 2.0, 3.0});

  const auto rot = eigenvalues_dense(Matrix{{0.0, -1.0}, {1.0, 0.0}}).values;
  REQUIRE(rot.size() == 2);
  CHECK(oracle::match_distance(rot, {Complex(0.0, 1.0), Complex(0.0, -1.0)}) <= 1e-15);

  // Companion matrix of x³ − 6x² + 11x − 6; roots by bisection.
  const Matrix c = {{6.0, -11.0, 6.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  auto p = [](double x) { return ((x - 6.0) * x + 11.0) * x - 6.0; };
  const std::vector<double> roots = {oracle::bisect(p, 0.5, 1.5), oracle::bisect(p, 1.5, 2.5),
                                     oracle::bisect(p, 2.5, 3.5)};
  const auto got = sorted_real(eigenvalues_dense(c).values);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - roots[i]) <= 1e-10);
}

TEST_CASE("eigenvalues_dense: agrees with an independent solver") {
  std::mt19937_64 rng(42);
  for (std::size_t n : {1, 2, 7, 33, 80}) {
    const Matrix a = oracle::random_matrix(n, n, rng);
    CHECK(oracle::match_distance(eigenvalues_dense(a).values, oracle::eigen_eigenvalues(a)) <= 1e-10);
  }
}

TEST_CASE("eigenvalues_dense: large null space deflates") {
  // Rank one of order 150: one eigenvalue uᵀv and 149 zeros.
  std::mt19937_64 rng(5);
  const Matrix u = oracle::random_matrix(150, 1, rng, 0.0, 1.0);
  const Matrix v = oracle::random_matrix(1, 150, rng, 0.0, 1.0);
  const Matrix a = u * v;
  double dot = 0.0;
  for (std::size_t i = 0; i < 150; ++i) dot += u(i, 0) * v(0, i);
  const auto values = eigenvalues_dense(a).values;
  double largest = 0.0, rest = 0.0;
  for (const auto& z : values) {
    if (std::abs(z) > largest) {
      rest = std::max(rest, largest);
      largest = std::abs(z);
    } else {
      rest = std::max(rest, std::abs(z));
    }
  }
  CHECK(std::abs(largest - dot) <= 1e-12 * dot);
  CHECK(rest <= 1e-6 * dot);
}

TEST_CASE("eigenvalues_dense: rejects non-finite input") {
  CHECK_THROWS_AS(eigenvalues_dense(Matrix{{1.0, NAN}, {0.0, 1.0}}), Error);
}

TEST_CASE("inverse_iteration and attach_eigenvectors satisfy the residual bound") {
  std::mt19937_64 rng(3);
  const Matrix a = oracle::random_matrix(12, 12, rng);
  EigenList list = eigenvalues_dense(a);
  attach_eigenvectors(a, list);
  REQUIRE(list.vectors.has_value());
  CMatrix ac(12, 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) ac(i, j) = a(i, j);
  for (std::size_t k = 0; k < list.values.size(); ++k) {
    CVector v(12);
    for (std::size_t i = 0; i < 12; ++i) v[i] = (*list.vectors)(i, k);
    const CVector av = multiply(ac, std::span<const Complex>(v));
    double r = 0.0;
    for (std::size_t i = 0; i < 12; ++i) r = std::max(r, std::abs(av[i] - list.values[k] * v[i]));
    CHECK(r <= 1e-10 * inf_norm(a) * inf_norm(v));
  }
}

TEST_CASE("power_iteration: modulus and direction") {
  auto diag = [](double x, double y) {
    return [x, y](std::span<const double> in, std::span<double> out) {
      out[0] = x * in[0];
      out[1] = y * in[1];
    };
  };
  const PowerResult a = power_iteration(diag(3.0, 1.0), 2, 1e-12, 1000);
  CHECK(std::abs(a.modulus - 3.0) <= 1e-12);
  CHECK(std::abs(a.vector[0] - 1.0) <= 1e-12);
  CHECK(std::abs(a.vector[1]) <= 1e-10);
  CHECK(std::abs(power_iteration(diag(-5.0, 2.0), 2, 1e-12, 1000).modulus - 5.0) <= 1e-11);

  const Matrix m = {{1.0, 2.0, 0.5, 0.0}, {0.3, 0.2, 1.0, 0.7}, {0.0, 0.4, 0.1, 2.0}, {1.5, 0.0, 0.6, 0.9}};
  const auto apply = [&m](std::span<const double> in, std::span<double> out) {
    const Vector y = multiply(m, in);
    std::copy(y.begin(), y.end(), out.begin());
  };
  double perron = 0.0;
  for (const auto& z : eigenvalues_dense(m).values) perron = std::max(perron, std::abs(z));
  CHECK(std::abs(power_iteration(apply, 4, 1e-13, 5000).modulus - perron) <= 1e-9);
}

TEST_CASE("power_iteration: no convergence is reported") {
  // Rotation: equal moduli, no dominant direction.
  const auto rot = [](std::span<const double> in, std::span<double> out) {
    out[0] = -in[1];
    out[1] = in[0];
  };
  CHECK_THROWS_AS(power_iteration(rot, 2, 1e-12, 200), Error);
}

TEST_CASE("linalg properties") {
  for (const auto& r : props::linalg()) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}
