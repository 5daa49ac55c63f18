#include "r0col/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace r0col {

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::Fourier: return "fourier";
    case Scheme::Chebyshev: return "chebyshev";
    case Scheme::PiecewiseChebyshev: return "chebyshev-piecewise";
  }
  return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

// Extremal nodes of degree n mapped onto [a, b], increasing. Built from the
// closer endpoint so the mesh is symmetric about the midpoint.
void append_chebyshev_nodes(std::vector<double>& out, std::size_t n, double a, double b, bool skip_first) {
  const double len = b - a;
  for (std::size_t i = skip_first ? 1 : 0; i <= n; ++i) {
    double t;
    if (i == 0) {
      t = a;
    } else if (i == n) {
      t = b;
    } else if (2 * i <= n) {
      const double s = std::sin(static_cast<double>(i) * kPi / (2.0 * static_cast<double>(n)));
      t = a + len * s * s;
    } else {
      const double s = std::sin(static_cast<double>(n - i) * kPi / (2.0 * static_cast<double>(n)));
      t = b - len * s * s;
    }
    out.push_back(t);
  }
}

void apply_negative_sum_diagonal(Matrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (j != i) s += d(i, j);
    d(i, i) = -s;
  }
}

void require_positive_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw Error(ErrorCode::InvalidArgument, "period must be positive and finite");
}

}  // namespace

Mesh fourier_mesh(std::size_t n, double period, bool allow_even) {
  require_positive_period(period);
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "Fourier mesh needs N >= 3");
  if (n % 2 == 0 && !allow_even) {
    throw Error(ErrorCode::EvenN, "Fourier collocation with even N = " + std::to_string(n) +
                                      " can produce a spurious dominant eigenvalue");
  }
  Mesh mesh;
  mesh.scheme = Scheme::Fourier;
  mesh.degree = n;
  mesh.period = period;
  mesh.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    mesh.nodes[i] = period * static_cast<double>(i) / static_cast<double>(n);
  return mesh;
}

Mesh chebyshev_mesh(std::size_t n, double period) {
  require_positive_period(period);
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Chebyshev mesh needs N >= 2");
  Mesh mesh;
  mesh.scheme = Scheme::Chebyshev;
  mesh.degree = n;
  mesh.period = period;
  mesh.breakpoints = {0.0, period};
  append_chebyshev_nodes(mesh.nodes, n, 0.0, period, false);
  return mesh;
}

Mesh piecewise_chebyshev_mesh(std::span<const double> breakpoints, std::size_t n_per_piece) {
  if (breakpoints.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two breakpoints");
  if (breakpoints.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "breakpoints must start at 0");
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k] > breakpoints[k - 1]))
      throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
  }
  if (n_per_piece < 2) throw Error(ErrorCode::InvalidArgument, "piecewise Chebyshev needs N >= 2 per piece");
  const double period = breakpoints.back();
  require_positive_period(period);
  Mesh mesh;
  mesh.scheme = breakpoints.size() == 2 ? Scheme::Chebyshev : Scheme::PiecewiseChebyshev;
  mesh.degree = n_per_piece;
  mesh.period = period;
  mesh.breakpoints.assign(breakpoints.begin(), breakpoints.end());
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
    append_chebyshev_nodes(mesh.nodes, n_per_piece, breakpoints[k], breakpoints[k + 1], k > 0);
  return mesh;
}

Matrix fourier_diff_matrix(const Mesh& mesh) {
  if (mesh.scheme != Scheme::Fourier) throw Error(ErrorCode::InvalidArgument, "not a Fourier mesh");
  const std::size_t n = mesh.nodes.size();
  const double h = 2.0 * kPi / static_cast<double>(n);
  const double scale = 2.0 * kPi / mesh.period;
  const bool odd = n % 2 == 1;
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const long diff = static_cast<long>(i) - static_cast<long>(j);
      const double half = 0.5 * static_cast<double>(diff) * h;
      const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
      const double kernel = odd ? 1.0 / std::sin(half) : std::cos(half) / std::sin(half);
      d(i, j) = scale * 0.5 * sign * kernel;
    }
  }
  apply_negative_sum_diagonal(d);
  return d;
}

Matrix chebyshev_diff_matrix(std::size_t n, double a, double b) {
  if (n < 1 || !(b > a)) throw Error(ErrorCode::InvalidArgument, "bad Chebyshev interval");
  const double nn = static_cast<double>(n);
  // Canonical x_i = cos(iπ/N) is decreasing; t = a + (b−a)(1−x)/2 so
  // d/dt = −2/(b−a) d/dx.
  const double scale = -2.0 / (b - a);
  Matrix d(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double ci = (i == 0 || i == n) ? 2.0 : 1.0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // x_i − x_j = −2 sin((i+j)π/2N) sin((i−j)π/2N)
      const double dx = -2.0 * std::sin(static_cast<double>(i + j) * kPi / (2.0 * nn)) *
                        std::sin((static_cast<double>(i) - static_cast<double>(j)) * kPi / (2.0 * nn));
      d(i, j) = scale * (ci / cj) * sign / dx;
    }
  }
  apply_negative_sum_diagonal(d);
  return d;
}

Matrix chebyshev_diff_matrix(const Mesh& mesh) {
  if (mesh.scheme != Scheme::Chebyshev) throw Error(ErrorCode::InvalidArgument, "not a single-piece Chebyshev mesh");
  return chebyshev_diff_matrix(mesh.degree, 0.0, mesh.period);
}

Matrix fold_periodic(const Matrix& d) {
  if (!d.square() || d.rows() < 2) throw Error(ErrorCode::InvalidArgument, "fold_periodic needs (N+1)x(N+1)");
  const std::size_t n = d.rows() - 1;
  Matrix out(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) out(i - 1, j - 1) = d(i, j);
    out(i - 1, n - 1) += d(i, 0);
  }
  return out;
}

Matrix periodic_diff_matrix(const Mesh& mesh) {
  if (mesh.scheme == Scheme::Fourier) return fourier_diff_matrix(mesh);
  if (mesh.scheme == Scheme::Chebyshev) return fold_periodic(chebyshev_diff_matrix(mesh));

  const std::size_t pieces = mesh.piece_count();
  const std::size_t n = mesh.degree;
  const std::size_t total = pieces * n;
  Matrix global(total, total);
  // Unknown (p, i), i = 1..N, sits at column p·N + i − 1. The left endpoint
  // of piece p is unknown (p − 1, N), wrapping to the last piece.
  for (std::size_t p = 0; p < pieces; ++p) {
    const Matrix local = chebyshev_diff_matrix(n, mesh.breakpoints[p], mesh.breakpoints[p + 1]);
    const std::size_t left_end = ((p + pieces - 1) % pieces) * n + (n - 1);
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t row = p * n + i - 1;
      for (std::size_t j = 1; j <= n; ++j) global(row, p * n + j - 1) += local(i, j);
      global(row, left_end) += local(i, 0);
    }
  }
  return global;
}

namespace {

Vector chebyshev_barycentric(std::span<const double> nodes, std::span<const Vector> values, double t) {
  const std::size_t n = nodes.size() - 1;
  const std::size_t dim = values.front().size();
  Vector num(dim, 0.0);
  double den = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double diff = t - nodes[j];
    if (diff == 0.0) return values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) w *= 0.5;
    const double c = w / diff;
    den += c;
    for (std::size_t k = 0; k < dim; ++k) num[k] += c * values[j][k];
  }
  for (auto& v : num) v /= den;
  return num;
}

}  // namespace

Vector barycentric_eval(const Mesh& mesh, std::span<const Vector> nodal_values, double t) {
  if (nodal_values.size() != mesh.nodes.size())
    throw Error(ErrorCode::InvalidArgument, "one value per mesh node expected");
  if (nodal_values.empty()) return {};
  const std::size_t dim = nodal_values.front().size();

  if (mesh.scheme == Scheme::Fourier) {
    for (std::size_t j = 0; j < mesh.nodes.size(); ++j)
      if (t == mesh.nodes[j]) return nodal_values[j];
    double s = std::fmod(t, mesh.period);
    if (s < 0.0) s += mesh.period;
    const std::size_t n = mesh.nodes.size();
    const bool odd = n % 2 == 1;
    const double omega = kPi / mesh.period;  // half-angle factor
    Vector num(dim, 0.0);
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double half = omega * (s - mesh.nodes[j]);
      const double sn = std::sin(half);
      if (sn == 0.0) return nodal_values[j];
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double c = sign * (odd ? 1.0 / sn : std::cos(half) / sn);
      den += c;
      for (std::size_t k = 0; k < dim; ++k) num[k] += c * nodal_values[j][k];
    }
    for (auto& v : num) v /= den;
    return num;
  }

  const double tc = std::clamp(t, 0.0, mesh.period);
  const std::size_t n = mesh.degree;
  std::size_t piece = 0;
  while (piece + 1 < mesh.piece_count() && tc > mesh.breakpoints[piece + 1]) ++piece;
  const std::size_t first = piece * n;
  return chebyshev_barycentric(std::span<const double>(mesh.nodes).subspan(first, n + 1),
                               nodal_values.subspan(first, n + 1), tc);
}

std::vector<Vector> unknowns_to_nodes(const Mesh& mesh, std::span<const Vector> unknown_values) {
  if (unknown_values.size() != mesh.unknown_count())
    throw Error(ErrorCode::InvalidArgument, "one value per unknown expected");
  std::vector<Vector> out;
  out.reserve(mesh.nodes.size());
  if (mesh.scheme != Scheme::Fourier) out.push_back(unknown_values.back());
  out.insert(out.end(), unknown_values.begin(), unknown_values.end());
  return out;
}

}  // namespace r0col
