#pragma once

// Meshes, differentiation matrices and barycentric interpolation for
// Fourier (trigonometric) and Chebyshev (algebraic, optionally piecewise)
// collocation over one period [0, τ].

#include <cstddef>
#include <span>
#include <vector>

#include "r0col/linalg.hpp"

namespace r0col {

enum class Scheme { Fourier, Chebyshev, PiecewiseChebyshev };

const char* to_string(Scheme scheme) noexcept;

struct Mesh {
  Scheme scheme = Scheme::Fourier;
  std::size_t degree = 0;  // Fourier: node count; Chebyshev: degree per piece
  double period = 1.0;
  // Fourier: t_i = τ i/N, i = 0..N−1. Chebyshev: all distinct nodes on
  // [0, τ] including both endpoints; shared breakpoints appear once.
  std::vector<double> nodes;
  // Piece boundaries {0, …, τ}; empty for Fourier, {0, τ} for single-piece
  // Chebyshev.
  std::vector<double> breakpoints;

  std::size_t piece_count() const noexcept {
    return breakpoints.size() < 2 ? 1 : breakpoints.size() - 1;
  }
  // Periodic unknowns: Fourier keeps every node; Chebyshev drops t = 0
  // (identified with t = τ).
  std::size_t unknown_count() const noexcept {
    return scheme == Scheme::Fourier ? nodes.size() : nodes.size() - 1;
  }
  // Mesh node index of unknown k.
  std::size_t unknown_node(std::size_t k) const noexcept {
    return scheme == Scheme::Fourier ? k : k + 1;
  }
  // Piece that owns unknown k (its collocation equation uses this piece).
  std::size_t unknown_piece(std::size_t k) const noexcept {
    return scheme == Scheme::Fourier ? 0 : k / degree;
  }
};

// Fourier mesh with N equispaced nodes. Even N is rejected with EvenN
// unless allow_even is set (even N can produce a spurious dominant
// eigenvalue in the pencil).
Mesh fourier_mesh(std::size_t n, double period, bool allow_even = false);

Mesh chebyshev_mesh(std::size_t n, double period);

// One degree-N Chebyshev extremal mesh per piece.
Mesh piecewise_chebyshev_mesh(std::span<const double> breakpoints, std::size_t n_per_piece);

// Fourier differentiation matrix on the mesh nodes (N×N).
Matrix fourier_diff_matrix(const Mesh& mesh);

// Chebyshev differentiation matrix on the (N+1) nodes of a single-piece
// mesh, ordered t_0 = 0 … t_N = τ.
Matrix chebyshev_diff_matrix(const Mesh& mesh);

// Chebyshev differentiation matrix on an arbitrary interval [a, b].
Matrix chebyshev_diff_matrix(std::size_t n, double a, double b);

// Folds the periodicity condition Φ_0 = Φ_N into an (N+1)×(N+1)
// Chebyshev matrix: rows/cols 1..N kept, column 0 added onto column N.
Matrix fold_periodic(const Matrix& d);

// Differentiation matrix acting on the periodic unknowns of any mesh:
// D_N for Fourier, the folded matrix for Chebyshev, and the block-folded
// global matrix (continuity + periodicity) for piecewise Chebyshev.
Matrix periodic_diff_matrix(const Mesh& mesh);

// Interpolant at time t from one d-vector per mesh node (nodes.size()
// entries). Fourier evaluates t modulo τ.
Vector barycentric_eval(const Mesh& mesh, std::span<const Vector> nodal_values, double t);

// Expands values given per unknown to values per mesh node (Chebyshev:
// prepends the periodic copy for t = 0).
std::vector<Vector> unknowns_to_nodes(const Mesh& mesh, std::span<const Vector> unknown_values);

}  // namespace r0col
