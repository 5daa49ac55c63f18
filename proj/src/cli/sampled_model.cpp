#include "r0col/cli/sampled_model.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "r0col/error.hpp"

namespace r0col::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

// Interpolant of one piece: a mesh over [0, end − start] plus flattened
// coefficient samples per node.
struct PieceInterpolant {
  double start = 0.0;
  Mesh mesh;
  std::vector<Vector> birth;
  std::vector<Vector> transition;
};

Vector flatten(const Matrix& m) { return Vector(m.data().begin(), m.data().end()); }

Matrix unflatten(const Vector& v, std::size_t dim) {
  Matrix m(dim, dim);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

}  // namespace

PeriodicModel sampled_model(std::size_t dim, double period, const std::vector<SampledPiece>& pieces,
                            Scheme scheme, Smoothness smoothness) {
  if (dim == 0) fail("sampled model needs dim >= 1");
  if (!(period > 0.0)) fail("sampled model needs a positive period");
  if (pieces.empty()) fail("sampled model needs at least one piece");
  if (scheme == Scheme::Fourier && pieces.size() != 1) fail("Fourier sampling takes exactly one piece");

  const double tol = kSampleTimeTol * period;
  auto interps = std::make_shared<std::vector<PieceInterpolant>>();
  std::vector<double> breakpoints{0.0};
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const SampledPiece& piece = pieces[p];
    const std::string where = "piece " + std::to_string(p);
    if (std::abs(piece.start - breakpoints.back()) > tol) fail(where + " does not start where the previous one ends");
    if (!(piece.end > piece.start)) fail(where + " is empty");
    const double length = piece.end - piece.start;
    const std::size_t k = piece.samples.size();

    PieceInterpolant interp;
    interp.start = piece.start;
    if (scheme == Scheme::Fourier) {
      if (k < 1) fail(where + " has no samples");
      interp.mesh = Mesh{Scheme::Fourier, k, length, {}, {}};
      for (std::size_t j = 0; j < k; ++j) interp.mesh.nodes.push_back(length * static_cast<double>(j) / static_cast<double>(k));
    } else {
      if (k < 2) fail(where + " needs at least two Chebyshev samples");
      interp.mesh = chebyshev_mesh(k - 1, length);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const CoefficientSample& s = piece.samples[j];
      const std::string sw = where + " sample " + std::to_string(j);
      if (std::abs(s.t - (piece.start + interp.mesh.nodes[j])) > tol) {
        fail(sw + " is at t=" + std::to_string(s.t) + ", expected " +
             std::to_string(piece.start + interp.mesh.nodes[j]) + " for the " + to_string(scheme) + " layout");
      }
      if (s.birth.rows() != dim || s.birth.cols() != dim || s.transition.rows() != dim || s.transition.cols() != dim)
        fail(sw + " has matrices of the wrong size");
      for (double v : s.birth.data())
        if (!(v >= 0.0)) fail(sw + " has a negative or non-finite B entry");
      for (double v : s.transition.data())
        if (!std::isfinite(v)) fail(sw + " has a non-finite M entry");
      interp.birth.push_back(flatten(s.birth));
      interp.transition.push_back(flatten(s.transition));
    }
    interps->push_back(std::move(interp));
    breakpoints.push_back(piece.end);
  }
  if (std::abs(breakpoints.back() - period) > tol) fail("pieces do not end at the period");
  breakpoints.back() = period;

  PeriodicModel model;
  model.dim = dim;
  model.period = period;
  model.breakpoints = breakpoints;
  model.smoothness = smoothness;
  model.label = "custom-samples";
  model.birth = [interps, dim](double t, std::size_t piece) {
    const PieceInterpolant& it = (*interps)[piece];
    return unflatten(barycentric_eval(it.mesh, it.birth, t - it.start), dim);
  };
  model.transition = [interps, dim](double t, std::size_t piece) {
    const PieceInterpolant& it = (*interps)[piece];
    return unflatten(barycentric_eval(it.mesh, it.transition, t - it.start), dim);
  };
  return model;
}

}  // namespace r0col::cli
