#pragma once

// Monodromy-operator baseline: R₀ as the λ > 0 with ρ(U^(λ)(τ, 0)) = 1,
// where U^(λ) is the principal matrix solution of u' = (B(t)/λ − M(t)) u.

#include <functional>
#include <vector>

#include "r0col/linalg.hpp"
#include "r0col/model.hpp"

namespace r0col {

struct IntegratorStats {
  int steps = 0;
  int rejected = 0;
  int evaluations = 0;
  double rtol = 0.0;
  double atol = 0.0;
};

// Dormand–Prince 5(4) with PI step-size control on the matrix ODE
// Y' = A(t) Y, Y(t0) = I. Model breakpoints inside (t0, t1) are hard step
// boundaries; each segment evaluates the model with its own piece index.
// Throws StepSizeUnderflow when the step size collapses.
Matrix principal_solution(const PeriodicModel& model, double lambda, double t0, double t1, double rtol,
                          double atol, IntegratorStats* stats = nullptr);

struct MonodromyResult {
  double lambda = 0.0;
  Matrix monodromy;
  double spectral_radius = 0.0;
  IntegratorStats stats;
};

MonodromyResult monodromy(const PeriodicModel& model, double lambda, double rtol = 1e-10, double atol = 1e-12);

struct BracketSample {
  double lambda = 0.0;
  double rho_minus_one = 0.0;
};

struct MomSolveReport {
  double r0 = 0.0;
  std::vector<BracketSample> history;  // every evaluation, in order
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  int evaluations = 0;
  double residual = 0.0;  // |ρ(U^(R0)) − 1|
};

inline constexpr int kMaxBracketExpansions = 60;
inline constexpr double kInitialBracketFactor = 1.5;

// Brackets the root of ρ(U^(λ)) − 1 around the averaged-model R₀ and
// refines it with Brent's method. Throws BracketFailure when no sign change
// is found within kMaxBracketExpansions doublings.
MomSolveReport mom_solve(const PeriodicModel& model, double rtol_ode = 1e-10, double tol_root = 1e-8);

// Brent's zero finder on [a, b] with f(a), f(b) of opposite sign. Stops when
// the bracket width is <= xtol·max(1, |x|) or |f| <= ftol.
struct BrentResult {
  double root = 0.0;
  double value = 0.0;
  double other_end = 0.0;
  int iterations = 0;
};

BrentResult brent_zero(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                       double xtol, double ftol, int max_iter = 200);

}  // namespace r0col
