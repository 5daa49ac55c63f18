#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "r0col/linalg.hpp"

namespace r0col {

enum class Smoothness { Lipschitz, Smooth, Analytic, PiecewiseAnalytic };

const char* to_string(Smoothness s) noexcept;

// Coefficient evaluator. `piece` selects the one-sided limit at a
// breakpoint: piece k covers (breakpoints[k], breakpoints[k+1]].
using CoefficientFn = std::function<Matrix(double t, std::size_t piece)>;

// Linear τ-periodic system u' = B(t)u − M(t)u, queried on [0, τ] only.
struct PeriodicModel {
  std::size_t dim = 1;
  double period = 1.0;
  CoefficientFn birth;       // B(t) ≥ 0 entry-wise
  CoefficientFn transition;  // M(t), −M Metzler
  std::vector<double> breakpoints{0.0, 1.0};
  Smoothness smoothness = Smoothness::Analytic;
  int lipschitz_order = 0;  // s for Lipschitz(s)
  std::string label;

  std::size_t piece_count() const noexcept { return breakpoints.size() - 1; }

  // Piece whose closure contains t, preferring the left piece at a shared
  // breakpoint (left-limit convention).
  std::size_t piece_at(double t) const noexcept {
    std::size_t k = 0;
    while (k + 1 < piece_count() && t > breakpoints[k + 1]) ++k;
    return k;
  }

  Matrix B(double t) const { return birth(t, piece_at(t)); }
  Matrix M(double t) const { return transition(t, piece_at(t)); }
};

inline const char* to_string(Smoothness s) noexcept {
  switch (s) {
    case Smoothness::Lipschitz: return "lipschitz";
    case Smoothness::Smooth: return "smooth";
    case Smoothness::Analytic: return "analytic";
    case Smoothness::PiecewiseAnalytic: return "piecewise-analytic";
  }
  return "unknown";
}

}  // namespace r0col
