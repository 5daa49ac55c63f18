#pragma once

// Collocation pencil (ℬ_N, ℳ_N) for a periodic model, its dominant
// eigenpair (the reproduction number), and averaged-model comparisons.

#include <cstddef>
#include <vector>

#include "r0col/collocation.hpp"
#include "r0col/linalg.hpp"
#include "r0col/model.hpp"

namespace r0col {

struct DiscretePencil {
  Matrix birth;       // blkdiag(B(t_1), …, B(t_N))
  Matrix transition;  // (D ⊗ I_d) + blkdiag(M(t_1), …, M(t_N))
  Mesh mesh;
  PeriodicModel model;
  std::size_t dim = 1;

  std::size_t order() const noexcept { return birth.rows(); }
};

enum class SolveStrategy { FullSpectrum, PowerFastPath };

// How the dense path picks R0_N. RealInBand requires a real nonnegative
// eigenvalue within the dominance band and throws NoRealDominant otherwise.
// LargestReal takes the largest real positive eigenvalue even when complex
// modes have larger modulus (pre-asymptotic N in convergence studies).
enum class DominantSelection { RealInBand, LargestReal };

struct SolveDiagnostics {
  double residual = 0.0;        // relative pencil residual of (R0_N, Φ)
  double dominance_gap = 0.0;   // 1 − |λ_2|/R0_N, NaN for the power path
  double pivot_growth = 1.0;    // LU of ℳ_N
  int power_iterations = 0;
  bool nonnegative = true;      // Φ ≥ 0 up to 1e-12 dust
  bool dominant_is_real = true; // R0_N lies in the dominance band
};

struct SpectralSolution {
  double r0 = 0.0;
  EigenList spectrum;        // eigenvalues of ℳ_N⁻¹ℬ_N; empty for the power path
  std::vector<Vector> phi;   // generalized eigenfunction, one d-vector per unknown, ‖Φ‖∞ = 1
  std::vector<Vector> psi;   // ψ_i = B(t_i)Φ_i / R0_N
  Mesh mesh;
  PeriodicModel model;
  SolveStrategy strategy = SolveStrategy::FullSpectrum;
  SolveDiagnostics diagnostics;
};

// Build (ℬ_N, ℳ_N). Throws MeshModelMismatch when the periods disagree or a
// Fourier mesh meets a model with interior breakpoints.
DiscretePencil assemble(const PeriodicModel& model, const Mesh& mesh);

// Relative half-width of the dominance band around the maximum modulus.
inline constexpr double kDominanceBand = 1e-8;

SpectralSolution solve_r0(const DiscretePencil& pencil, SolveStrategy strategy = SolveStrategy::FullSpectrum,
                          DominantSelection selection = DominantSelection::RealInBand);

// Power path first, dense path when power iteration does not converge.
SpectralSolution solve_r0_auto(const DiscretePencil& pencil,
                               DominantSelection selection = DominantSelection::RealInBand);

struct EigenfunctionSample {
  Vector phi;
  Vector psi;
};

EigenfunctionSample eigenfunction_at(const SpectralSolution& solution, double t);

// B̂(t) = τB(τt), M̂(t) = τM(τt) on [0, 1].
PeriodicModel rescale_to_unit_period(const PeriodicModel& model);

struct AveragedCoefficients {
  Matrix birth;
  Matrix transition;
};

inline constexpr std::size_t kAverageQuadraturePoints = 4096;

// Entry-wise period averages by composite trapezoid, piece by piece.
AveragedCoefficients period_average(const PeriodicModel& model);

// ρ(B̄ M̄⁻¹) of the time-averaged model.
double averaged_r0(const PeriodicModel& model);

// max |λ| over the eigenvalues of a real square matrix.
double spectral_radius(const Matrix& a);

}  // namespace r0col
