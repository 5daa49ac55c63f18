#include "r0col/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace r0col {

namespace {

void check_block(const Matrix& m, std::size_t dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " evaluator returned a wrongly sized matrix");
}

// Model piece used for the collocation equation at unknown k.
std::size_t model_piece_for_unknown(const PeriodicModel& model, const Mesh& mesh, std::size_t k) {
  return model.piece_at(mesh.nodes[mesh.unknown_node(k)]);
}

Vector block_apply(const Matrix& blocks, std::size_t dim, std::size_t block, std::span<const double> x) {
  Vector y(dim, 0.0);
  const std::size_t off = block * dim;
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc += blocks(off + i, off + j) * x[j];
    y[i] = acc;
  }
  return y;
}

constexpr int kResidualCorrections = 5;

struct RefinedPair {
  double value;
  Vector vector;
};

// Shifted inverse iteration on the pencil: (ℬ − σℳ) y = ℳ x. Returns the
// eigenvalue nearest σ and its vector (unit ∞-norm, largest entry positive).
RefinedPair refine_on_pencil(const DiscretePencil& pencil, double shift, int iterations = 3) {
  const std::size_t n = pencil.order();
  const double scale = std::max(1.0, std::abs(shift));
  std::optional<LUFactorization<double>> lu;
  double sigma = shift;
  for (int attempt = 0; attempt < 4 && !lu; ++attempt) {
    Matrix shifted = pencil.birth - sigma * pencil.transition;
    try {
      lu = lu_factor(std::move(shifted), 0.0);
    } catch (const Error&) {
      sigma = shift + 1e-12 * scale * (attempt + 1);
    }
  }
  if (!lu) throw Error(ErrorCode::SingularMatrix, "pencil shift is an exact eigenvalue pole");

  Vector x(n, 1.0);
  double value = sigma;
  for (int it = 0; it < iterations; ++it) {
    Vector y = multiply<double>(pencil.transition, x);
    lu_solve_in_place<double>(*lu, y);
    double xy = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xy += x[i] * y[i];
      yy += y[i] * y[i];
    }
    if (yy == 0.0) break;
    value = sigma + xy / yy;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(y[i]) > std::abs(y[imax])) imax = i;
    const double pivot = y[imax];
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / pivot;
  }

  // Residual correction with extended-precision accumulation. Plain
  // inverse iteration stalls at an eigenvector error that grows with the
  // order of the pencil; correcting against an accurately formed residual
  // brings the eigenvalue down to the round-off floor of a single row.
  auto products = [&](Vector& residual) {
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      long double b = 0.0L, m = 0.0L;
      for (std::size_t j = 0; j < n; ++j) {
        b += static_cast<long double>(pencil.birth(i, j)) * x[j];
        m += static_cast<long double>(pencil.transition(i, j)) * x[j];
      }
      residual[i] = static_cast<double>(b - static_cast<long double>(value) * m);
      num += m * b;
      den += m * m;
    }
    return den > 0.0L ? static_cast<double>(num / den) : value;
  };
  Vector r(n);
  for (int it = 0; it < kResidualCorrections; ++it) {
    products(r);
    lu_solve_in_place<double>(*lu, r);
    double big = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] -= r[i];
      if (std::abs(x[i]) > std::abs(big)) big = x[i];
    }
    if (big == 0.0 || !std::isfinite(big)) break;
    for (auto& v : x) v /= big;
    value = products(r);
  }
  return {value, std::move(x)};
}

void finish_solution(const DiscretePencil& pencil, double r0, Vector flat, SpectralSolution& sol) {
  const std::size_t dim = pencil.dim;
  const std::size_t count = pencil.mesh.unknown_count();
  // Orientation: largest-modulus entry positive, ‖Φ‖∞ = 1.
  std::size_t imax = 0;
  for (std::size_t i = 1; i < flat.size(); ++i)
    if (std::abs(flat[i]) > std::abs(flat[imax])) imax = i;
  const double pivot = flat[imax];
  if (pivot != 0.0)
    for (auto& v : flat) v /= pivot;

  sol.r0 = r0;
  sol.mesh = pencil.mesh;
  sol.model = pencil.model;
  sol.phi.assign(count, Vector(dim));
  sol.psi.assign(count, Vector(dim));
  bool nonnegative = true;
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < dim; ++i) {
      sol.phi[k][i] = flat[k * dim + i];
      const double clamped = std::abs(flat[k * dim + i]) < 1e-12 ? 0.0 : flat[k * dim + i];
      if (clamped < 0.0) nonnegative = false;
    }
    const Vector b_phi = block_apply(pencil.birth, dim, k, sol.phi[k]);
    for (std::size_t i = 0; i < dim; ++i) sol.psi[k][i] = r0 != 0.0 ? b_phi[i] / r0 : 0.0;
  }
  sol.diagnostics.nonnegative = nonnegative;

  const Vector bphi = multiply<double>(pencil.birth, flat);
  const Vector mphi = multiply<double>(pencil.transition, flat);
  double res = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) res = std::max(res, std::abs(bphi[i] - r0 * mphi[i]));
  const double denom = inf_norm(flat) * (inf_norm(pencil.birth) + std::abs(r0) * inf_norm(pencil.transition));
  sol.diagnostics.residual = denom > 0.0 ? res / denom : res;
}

LUFactorization<double> factor_transition(const DiscretePencil& pencil) {
  try {
    return lu_factor(pencil.transition, kDefaultSingularTol);
  } catch (const Error& e) {
    throw Error(ErrorCode::SingularMN, std::string("M_N is singular (N too small?): ") + e.what());
  }
}

}  // namespace

DiscretePencil assemble(const PeriodicModel& model, const Mesh& mesh) {
  if (!model.birth || !model.transition) throw Error(ErrorCode::InvalidArgument, "model has no coefficient evaluators");
  if (std::abs(model.period - mesh.period) > 1e-12 * std::max(1.0, model.period)) {
    throw Error(ErrorCode::MeshModelMismatch, "model period " + std::to_string(model.period) +
                                                  " differs from mesh period " + std::to_string(mesh.period));
  }
  if (mesh.scheme == Scheme::Fourier && model.piece_count() > 1) {
    throw Error(ErrorCode::MeshModelMismatch,
                "Fourier collocation requires a model without interior breakpoints");
  }
  const std::size_t dim = model.dim;
  const std::size_t count = mesh.unknown_count();
  const std::size_t n = dim * count;
  const Matrix d = periodic_diff_matrix(mesh);

  DiscretePencil pencil;
  pencil.birth = Matrix(n, n);
  pencil.transition = Matrix(n, n);
  pencil.mesh = mesh;
  pencil.model = model;
  pencil.dim = dim;

  for (std::size_t k = 0; k < count; ++k) {
    const double t = mesh.nodes[mesh.unknown_node(k)];
    const std::size_t piece = model_piece_for_unknown(model, mesh, k);
    const Matrix b = model.birth(t, piece);
    const Matrix m = model.transition(t, piece);
    check_block(b, dim, "B");
    check_block(m, dim, "M");
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        pencil.birth(k * dim + i, k * dim + j) = b(i, j);
        pencil.transition(k * dim + i, k * dim + j) = m(i, j);
      }
    }
    for (std::size_t l = 0; l < count; ++l) {
      const double dkl = d(k, l);
      if (dkl == 0.0) continue;
      for (std::size_t i = 0; i < dim; ++i) pencil.transition(k * dim + i, l * dim + i) += dkl;
    }
  }
  return pencil;
}

SpectralSolution solve_r0(const DiscretePencil& pencil, SolveStrategy strategy, DominantSelection selection) {
  const std::size_t n = pencil.order();
  const LUFactorization<double> lu = factor_transition(pencil);
  SpectralSolution sol;
  sol.strategy = strategy;
  sol.diagnostics.pivot_growth = lu.pivot_growth;

  if (strategy == SolveStrategy::PowerFastPath) {
    const std::size_t dim = pencil.dim;
    const std::size_t blocks = pencil.mesh.unknown_count();
    LinearMap apply = [&](std::span<const double> in, std::span<double> out) {
      for (std::size_t k = 0; k < blocks; ++k) {
        const Vector y = block_apply(pencil.birth, dim, k, in.subspan(k * dim, dim));
        std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(k * dim));
      }
      lu_solve_in_place<double>(lu, out);
    };
    const PowerResult power = power_iteration(apply, n, 1e-10, 20000);
    sol.diagnostics.power_iterations = power.iterations;
    sol.diagnostics.dominance_gap = std::numeric_limits<double>::quiet_NaN();
    if (power.modulus == 0.0) {
      finish_solution(pencil, 0.0, Vector(n, 1.0), sol);
      return sol;
    }
    if (power.rayleigh < 0.0) {
      throw Error(ErrorCode::NoRealDominant,
                  "power iteration converged to a negative eigenvalue " + std::to_string(power.rayleigh));
    }
    RefinedPair refined = refine_on_pencil(pencil, power.rayleigh);
    finish_solution(pencil, refined.value, std::move(refined.vector), sol);
    return sol;
  }

  const Matrix h = lu_solve_matrix(lu, pencil.birth);
  sol.spectrum = eigenvalues_dense(h);
  double max_mod = 0.0;
  for (const auto& v : sol.spectrum.values) max_mod = std::max(max_mod, std::abs(v));
  if (max_mod == 0.0) {
    sol.diagnostics.dominance_gap = 0.0;
    finish_solution(pencil, 0.0, Vector(n, 1.0), sol);
    return sol;
  }

  const double band_floor = (1.0 - kDominanceBand) * max_mod;
  double best = -1.0;
  double largest_real = -1.0;
  double second = 0.0;
  std::ostringstream band;
  for (const auto& v : sol.spectrum.values) {
    const double mod = std::abs(v);
    const bool real = std::abs(v.imag()) <= kDominanceBand * max_mod;
    if (real && v.real() > 0.0) largest_real = std::max(largest_real, v.real());
    if (mod >= band_floor) {
      band << " (" << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i)";
      if (real && v.real() > 0.0) best = std::max(best, v.real());
    } else {
      second = std::max(second, mod);
    }
  }
  if (best < 0.0) {
    if (selection == DominantSelection::RealInBand || largest_real < 0.0) {
      throw Error(ErrorCode::NoRealDominant, "no real nonnegative eigenvalue in the dominance band:" + band.str());
    }
    best = largest_real;
    sol.diagnostics.dominant_is_real = false;
  }
  sol.diagnostics.dominance_gap = 1.0 - second / max_mod;
  RefinedPair refined = refine_on_pencil(pencil, best);
  // Keep the dense value unless refinement moved to a different eigenvalue.
  const double r0 = std::abs(refined.value - best) <= 1e-8 * best ? refined.value : best;
  finish_solution(pencil, r0, std::move(refined.vector), sol);
  return sol;
}

SpectralSolution solve_r0_auto(const DiscretePencil& pencil, DominantSelection selection) {
  try {
    return solve_r0(pencil, SolveStrategy::PowerFastPath);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoConvergence && e.code() != ErrorCode::NoRealDominant) throw;
  }
  return solve_r0(pencil, SolveStrategy::FullSpectrum, selection);
}

EigenfunctionSample eigenfunction_at(const SpectralSolution& solution, double t) {
  const auto nodal = unknowns_to_nodes(solution.mesh, solution.phi);
  EigenfunctionSample out;
  out.phi = barycentric_eval(solution.mesh, nodal, t);
  const Matrix b = solution.model.B(t);
  const std::size_t dim = out.phi.size();
  out.psi.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc += b(i, j) * out.phi[j];
    out.psi[i] = solution.r0 != 0.0 ? acc / solution.r0 : 0.0;
  }
  return out;
}

PeriodicModel rescale_to_unit_period(const PeriodicModel& model) {
  if (model.period == 1.0) return model;
  PeriodicModel out = model;
  const double tau = model.period;
  out.period = 1.0;
  out.birth = [b = model.birth, tau](double t, std::size_t piece) { return tau * b(tau * t, piece); };
  out.transition = [m = model.transition, tau](double t, std::size_t piece) { return tau * m(tau * t, piece); };
  for (auto& bp : out.breakpoints) bp /= tau;
  out.breakpoints.back() = 1.0;
  return out;
}

AveragedCoefficients period_average(const PeriodicModel& model) {
  const std::size_t dim = model.dim;
  AveragedCoefficients avg{Matrix(dim, dim), Matrix(dim, dim)};
  const std::size_t m = kAverageQuadraturePoints;
  for (std::size_t p = 0; p < model.piece_count(); ++p) {
    const double a = model.breakpoints[p];
    const double b = model.breakpoints[p + 1];
    const double h = (b - a) / static_cast<double>(m);
    for (std::size_t k = 0; k <= m; ++k) {
      const double t = (k == m) ? b : a + h * static_cast<double>(k);
      const double w = (k == 0 || k == m) ? 0.5 * h : h;
      const Matrix bt = model.birth(t, p);
      const Matrix mt = model.transition(t, p);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          avg.birth(i, j) += w * bt(i, j);
          avg.transition(i, j) += w * mt(i, j);
        }
      }
    }
  }
  const double inv = 1.0 / model.period;
  for (auto& v : avg.birth.data()) v *= inv;
  for (auto& v : avg.transition.data()) v *= inv;
  return avg;
}

double spectral_radius(const Matrix& a) {
  double r = 0.0;
  for (const auto& v : eigenvalues_dense(a).values) r = std::max(r, std::abs(v));
  return r;
}

double averaged_r0(const PeriodicModel& model) {
  const AveragedCoefficients avg = period_average(model);
  std::optional<LUFactorization<double>> lu;
  try {
    lu = lu_factor(avg.transition, kDefaultSingularTol);
  } catch (const Error& e) {
    throw Error(ErrorCode::SingularAveragedM, std::string("averaged M is singular: ") + e.what());
  }
  // M̄⁻¹B̄ is similar to B̄M̄⁻¹.
  return spectral_radius(lu_solve_matrix(*lu, avg.birth));
}

}  // namespace r0col
