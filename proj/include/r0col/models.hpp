#pragma once

// Benchmark families: a multi-group SIR model with seasonal contacts and a
// vector-host model with seasonal vector recruitment.

#include <cstddef>

#include "r0col/model.hpp"

namespace r0col {

// Seasonal contact profile f(t).
struct ContactRate {
  enum class Kind { F1, F2, F3 };
  Kind kind = Kind::F1;
  double amplitude = 0.6;  // F1 only
  double phase = 0.2;      // F1 only
};

const char* to_string(ContactRate::Kind kind) noexcept;

// F1: 1 + a sin(2πt/τ − η)
// F2: κ + κ(0.68 + sin(2πt/τ))/(1 + (2/3) sin(2πt/τ)), κ = (5/2 − 123√5/250)⁻¹
// F3: 0.2 + 1 on [0, 0.4τ] ∪ [0.6τ, τ]
double contact_rate(const ContactRate& choice, double t, double period);

// ∫₀ᵗ f(θ) dθ for t ∈ [0, τ].
double contact_rate_integral(const ContactRate& choice, double t, double period);

// Rates are in the time unit of `period` (years by default).
struct SirParams {
  std::size_t groups = 1;
  double q = 0.6;
  double gamma = 365.0 / 7.0;
  double mu = 1.0 / 82.0;
  double population = 1000.0;
  double period = 1.0;
  ContactRate contact{};
};

void validate(const SirParams& p);

// B(t)_{jk} = q f(t) P_j P_k² / Σ_h P_h², M ≡ (γ + μ) I.
PeriodicModel sir_model(const SirParams& p);

// (1/(γ+μ)) Σ_k (1/τ) ∫₀^τ B_kk.
double sir_r0_exact(const SirParams& p);

// Generalized eigenfunction [φ(t)]_j = exp(Σ_k ∫₀ᵗ B_kk / R₀ − (γ+μ)t) P_j,
// unnormalized.
Vector sir_eigenfunction_exact(const SirParams& p, double t);

enum class Splitting { R0, HostType, VectorType };

const char* to_string(Splitting s) noexcept;

// Rates per day as usually tabulated; the period is in years and the model
// is assembled in years.
struct VectorHostParams {
  double biting = 0.09;
  double q_host_from_vector = 0.65;
  double q_vector_from_host = 0.85;
  double nu_host = 1.0 / 2.5;
  double nu_vector = 1.0 / 1.5;
  double omega = 0.82;
  double gamma = 1.0 / 3.5;
  double mu = 1.0 / 20.0;
  double ratio = 10.0;  // initial vector / host population
  double delta = 0.8;   // seasonality amplitude ετμ/(2π)
  double period = 1.0;  // years
  Splitting splitting = Splitting::R0;
};

inline constexpr double kDaysPerYear = 365.0;

void validate(const VectorHostParams& p);

// State (E_H, A_H, I_H, E_V, I_V).
PeriodicModel vector_host_model(const VectorHostParams& p);

// Vector seasonality exp(δ sin(2πt/τ)).
double vector_seasonality(double delta, double t, double period);

// Components of the vector-host coefficients, all in years.
Matrix vector_host_baseline_transition(const VectorHostParams& p);
Matrix vector_host_host_infection(const VectorHostParams& p);
Matrix vector_host_vector_infection(const VectorHostParams& p, double t);

}  // namespace r0col
