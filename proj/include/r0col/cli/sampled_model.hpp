#pragma once

// Models given as coefficient samples. Samples are interpolated with the
// basis of the scheme that will discretize the model:
//   Fourier: one piece, K samples at t_j = τj/K, trigonometric interpolant.
//   Chebyshev / piecewise Chebyshev: per piece [a, b], K+1 samples at the
//   extremal nodes a + (b−a)(1 − cos(jπ/K))/2, polynomial interpolant.

#include <cstddef>
#include <vector>

#include "r0col/collocation.hpp"
#include "r0col/model.hpp"

namespace r0col::cli {

struct CoefficientSample {
  double t = 0.0;
  Matrix birth;
  Matrix transition;
};

struct SampledPiece {
  double start = 0.0;
  double end = 1.0;
  std::vector<CoefficientSample> samples;
};

// Relative tolerance on sample times against the expected layout.
inline constexpr double kSampleTimeTol = 1e-9;

// Throws InvalidArgument when the sample layout does not match the scheme,
// the pieces do not tile [0, τ], or a B sample has a negative entry.
PeriodicModel sampled_model(std::size_t dim, double period, const std::vector<SampledPiece>& pieces,
                            Scheme scheme, Smoothness smoothness);

}  // namespace r0col::cli
