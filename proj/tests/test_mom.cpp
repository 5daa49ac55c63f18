#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "properties.hpp"
#include "r0col/models.hpp"
#include "r0col/mom.hpp"
#include "r0col/pencil.hpp"

using namespace r0col;

namespace {

PeriodicModel scalar_model(std::function<double(double)> b, double m) {
  PeriodicModel model;
  model.dim = 1;
  model.period = 1.0;
  model.breakpoints = {0.0, 1.0};
  model.smoothness = Smoothness::Analytic;
  model.birth = [b](double t, std::size_t) { return Matrix{{b(t)}}; };
  model.transition = [m](double, std::size_t) { return Matrix{{m}}; };
  return model;
}

// exp(A) by scaling and squaring of a truncated Taylor series.
Matrix expm(const Matrix& a) {
  int squarings = 0;
  double norm = inf_norm(a);
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix scaled = std::ldexp(1.0, -squarings) * a;
  Matrix term = Matrix::identity(a.rows()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (1.0 / k) * (term * scaled);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("monodromy: scalar closed forms") {
  const PeriodicModel flat = scalar_model([](double) { return 2.0; }, 1.0);
  CHECK(std::abs(monodromy(flat, 2.0).monodromy(0, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(monodromy(flat, 1.0).monodromy(0, 0) - std::exp(1.0)) <= 1e-9 * std::exp(1.0));

  const PeriodicModel wave = scalar_model([](double t) { return 2.0 * (1.0 + std::sin(2.0 * std::numbers::pi * t)); }, 1.0);
  const MonodromyResult u = monodromy(wave, 2.0);
  CHECK(std::abs(u.monodromy(0, 0) - 1.0) <= 1e-9);
  CHECK(u.spectral_radius == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(u.stats.steps > 0);
}

TEST_CASE("monodromy: constant 3x3 system equals the matrix exponential") {
  const Matrix b = {{0.5, 1.0, 0.0}, {0.0, 0.2, 0.7}, {1.1, 0.0, 0.3}};
  const Matrix m = {{2.0, -0.5, 0.0}, {0.0, 1.5, -0.2}, {-0.1, 0.0, 3.0}};
  PeriodicModel model;
  model.dim = 3;
  model.period = 2.0;
  model.breakpoints = {0.0, 2.0};
  model.birth = [b](double, std::size_t) { return b; };
  model.transition = [m](double, std::size_t) { return m; };
  const double lambda = 0.7;
  const Matrix want = expm(2.0 * ((1.0 / lambda) * b - m));
  const Matrix got = monodromy(model, lambda, 1e-12, 1e-14).monodromy;
  CHECK(inf_norm(got - want) <= 1e-9 * inf_norm(want));
}

TEST_CASE("monodromy: discontinuous contact rate is integrated exactly across jumps") {
  SirParams p;
  p.contact.kind = ContactRate::Kind::F3;
  const PeriodicModel model = sir_model(p);
  const double lambda = 9.0;
  const double want =
      std::exp(p.q * p.population * contact_rate_integral(p.contact, 1.0, 1.0) / lambda - (p.gamma + p.mu));
  const MonodromyResult u = monodromy(model, lambda);
  CHECK(std::abs(u.monodromy(0, 0) - want) <= 1e-8 * want);
}

TEST_CASE("monodromy: SIR at the closed-form R0 has unit spectral radius") {
  SirParams p;
  CHECK(std::abs(monodromy(sir_model(p), sir_r0_exact(p), 1e-10).spectral_radius - 1.0) <= 1e-8);
}

TEST_CASE("principal_solution rejects a non-positive lambda") {
  SirParams p;
  CHECK_THROWS_AS(monodromy(sir_model(p), 0.0), Error);
}

TEST_CASE("brent_zero") {
  auto f = [](double x) { return std::cos(x) - x; };
  const BrentResult r = brent_zero(f, 0.0, 1.0, f(0.0), f(1.0), 1e-15, 0.0);
  CHECK(std::abs(r.root - oracle::bisect(f, 0.0, 1.0)) <= 1e-14);
  CHECK_THROWS_AS(brent_zero(f, 0.0, 0.5, f(0.0), f(0.5), 1e-12, 0.0), Error);
}

TEST_CASE("mom_solve: constant, SIR and vector-host") {
  const MomSolveReport c = mom_solve(scalar_model([](double) { return 2.0; }, 1.0));
  CHECK(std::abs(c.r0 - 2.0) <= 1e-8 * 2.0);

  SirParams p;
  const MomSolveReport s = mom_solve(sir_model(p), 1e-10, 1e-8);
  CHECK(std::abs(s.r0 - sir_r0_exact(p)) <= 1e-6);
  // |ρ(λ) − 1| at a root located to 1e-8 in λ.
  CHECK(s.residual <= 1e-6);
  CHECK(s.evaluations == static_cast<int>(s.history.size()));
  const double lo = monodromy(sir_model(p), s.bracket_low).spectral_radius - 1.0;
  const double hi = monodromy(sir_model(p), s.bracket_high).spectral_radius - 1.0;
  CHECK(lo >= 0.0);
  CHECK(hi <= 0.0);

  VectorHostParams v;
  const double pencil = solve_r0(assemble(vector_host_model(v), fourier_mesh(41, 1.0))).r0;
  CHECK(std::abs(mom_solve(vector_host_model(v)).r0 - pencil) <= 1e-6);
}

TEST_CASE("mom_solve: zero birth term cannot be bracketed") {
  try {
    mom_solve(scalar_model([](double) { return 0.0; }, 1.0));
    FAIL("expected BracketFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BracketFailure);
  }
}

TEST_CASE("mom properties") {
  for (const auto& r : props::mom()) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}
