#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "properties.hpp"
#include "r0col/models.hpp"
#include "r0col/pencil.hpp"

using namespace r0col;

namespace {

ContactRate contact(ContactRate::Kind kind, double amplitude = 0.6, double phase = 0.2) { return {kind, amplitude, phase}; }

}  // namespace

TEST_CASE("contact_rate: F1, F2, F3 values") {
  const ContactRate f1 = contact(ContactRate::Kind::F1, 0.6, 0.0);
  CHECK(contact_rate(f1, 0.0, 1.0) == 1.0);
  CHECK(std::abs(contact_rate(f1, 0.25, 1.0) - 1.6) <= 1e-15);

  const ContactRate f3 = contact(ContactRate::Kind::F3);
  CHECK(std::abs(contact_rate(f3, 0.5, 1.0) - 0.2) <= 1e-15);
  CHECK(std::abs(contact_rate(f3, 0.3, 1.0) - 1.2) <= 1e-15);
  CHECK(std::abs(contact_rate(f3, 1.5, 5.0) - 1.2) <= 1e-15);

  const ContactRate f2 = contact(ContactRate::Kind::F2);
  const double avg = oracle::trapezoid([&](double t) { return contact_rate(f2, t, 1.0); }, 0.0, 1.0, 20000);
  CHECK(std::abs(avg - 1.0) <= 1e-9);
  for (int k = 0; k < 100; ++k) CHECK(contact_rate(f2, k / 100.0, 1.0) > 0.0);
}

TEST_CASE("contact_rate_integral matches quadrature") {
  for (auto kind : {ContactRate::Kind::F1, ContactRate::Kind::F2, ContactRate::Kind::F3}) {
    const ContactRate c = contact(kind);
    for (double t : {0.0, 0.17, 0.4, 0.55, 0.83, 1.0}) {
      const double q = t <= 0.4 || kind != ContactRate::Kind::F3
                           ? oracle::simpson([&](double x) { return contact_rate(c, x, 1.0); }, 0.0, t)
                           : oracle::simpson([&](double x) { return contact_rate(c, x, 1.0); }, 0.0, 0.4) +
                                 oracle::simpson([&](double x) { return contact_rate(c, x, 1.0); }, 0.4,
                                                 std::min(t, 0.6)) +
                                 (t > 0.6 ? oracle::simpson([&](double x) { return contact_rate(c, x, 1.0); }, 0.6, t)
                                          : 0.0);
      CHECK(std::abs(contact_rate_integral(c, t, 1.0) - q) <= 1e-10);
    }
  }
}

TEST_CASE("sir_model: coefficients") {
  SirParams p;
  const PeriodicModel one = sir_model(p);
  CHECK(one.dim == 1);
  for (double t : {0.0, 0.3, 0.71}) {
    CHECK(std::abs(one.B(t)(0, 0) - p.q * p.population * contact_rate(p.contact, t, 1.0)) <= 1e-12);
    CHECK(one.M(t)(0, 0) == p.gamma + p.mu);
  }
  CHECK(one.breakpoints == std::vector<double>{0.0, 1.0});

  p.groups = 2;
  const PeriodicModel two = sir_model(p);
  const double want = p.q * p.population * contact_rate(p.contact, 0.3, 1.0) / 2.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(two.B(0.3)(i, j) - want) <= 1e-12 * want);
  CHECK(two.M(0.3)(0, 1) == 0.0);

  p.contact.kind = ContactRate::Kind::F3;
  CHECK(sir_model(p).breakpoints == std::vector<double>{0.0, 0.4, 0.6, 1.0});
}

TEST_CASE("sir_model: piece index selects the one-sided value at a jump") {
  SirParams p;
  p.contact.kind = ContactRate::Kind::F3;
  const PeriodicModel m = sir_model(p);
  const double qp = p.q * p.population;
  CHECK(std::abs(m.birth(0.4, 0)(0, 0) - 1.2 * qp) <= 1e-12);
  CHECK(std::abs(m.birth(0.4, 1)(0, 0) - 0.2 * qp) <= 1e-12);
  CHECK(std::abs(m.birth(0.6, 1)(0, 0) - 0.2 * qp) <= 1e-12);
  CHECK(std::abs(m.birth(0.6, 2)(0, 0) - 1.2 * qp) <= 1e-12);
}

TEST_CASE("sir_r0_exact") {
  SirParams p;
  CHECK(std::abs(sir_r0_exact(p) - 600.0 / (365.0 / 7.0 + 1.0 / 82.0)) <= 1e-12);
  CHECK(std::abs(sir_r0_exact(p) - 11.504158733340011) <= 1e-12);
  SirParams doubled = p;
  p.q = 0.3;
  doubled.q = 0.6;
  CHECK(std::abs(sir_r0_exact(doubled) - 2.0 * sir_r0_exact(p)) <= 1e-12);
  for (auto kind : {ContactRate::Kind::F2, ContactRate::Kind::F3}) {
    SirParams other = p;
    other.contact.kind = kind;
    CHECK(std::abs(sir_r0_exact(other) - sir_r0_exact(p)) <= 1e-9);
  }
}

TEST_CASE("sir_eigenfunction_exact") {
  SirParams p;
  p.groups = 3;
  const Vector at0 = sir_eigenfunction_exact(p, 0.0);
  for (double v : at0) CHECK(v == p.population);
  const Vector at1 = sir_eigenfunction_exact(p, 1.0);
  for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(at1[j] - at0[j]) <= 1e-10 * at0[j]);

  SirParams one;
  const double r0 = sir_r0_exact(one);
  const double exponent =
      oracle::simpson([&](double t) { return one.q * one.population * contact_rate(one.contact, t, 1.0); }, 0.0, 0.5) /
          r0 -
      (one.gamma + one.mu) * 0.5;
  const double want = std::exp(exponent) * one.population;
  CHECK(std::abs(sir_eigenfunction_exact(one, 0.5)[0] - want) <= 1e-10 * want);
}

TEST_CASE("vector_host_model: autonomous R0 and splitting structure") {
  VectorHostParams p;
  p.delta = 0.0;
  const double r0_squared = (p.biting * p.q_host_from_vector / p.mu) * (p.biting * p.q_vector_from_host * p.ratio / p.gamma) *
                            (p.nu_vector / (p.nu_vector + p.mu));
  CHECK(std::abs(r0_squared - 2.914) <= 1e-3);
  const double r0 = solve_r0(assemble(vector_host_model(p), fourier_mesh(5, 1.0))).r0;
  CHECK(std::abs(r0 * r0 - r0_squared) <= 1e-10);
  CHECK(std::abs(averaged_r0(vector_host_model(p)) - std::sqrt(r0_squared)) <= 1e-10);

  VectorHostParams host;
  host.splitting = Splitting::HostType;
  const PeriodicModel mh = vector_host_model(host);
  VectorHostParams vec;
  vec.splitting = Splitting::VectorType;
  const PeriodicModel mv = vector_host_model(vec);
  for (double t : {0.1, 0.35, 0.8}) {
    const Matrix bh = mh.B(t), bv = mv.B(t);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK((bh(i, j) != 0.0) == (i == 0 && j == 4));
        CHECK((bv(i, j) != 0.0) == (i == 3 && (j == 1 || j == 2)));
      }
  }
  CHECK(mv.B(0.1)(3, 1) != mv.B(0.35)(3, 1));
  CHECK(mh.B(0.1)(0, 4) == mh.B(0.35)(0, 4));
}

TEST_CASE("vector_host_model: baseline transition") {
  VectorHostParams p;
  const Matrix m0 = vector_host_baseline_transition(p);
  const double c = kDaysPerYear;
  CHECK(m0(0, 0) == c * p.nu_host);
  CHECK(std::abs(m0(1, 0) + m0(2, 0) + m0(0, 0)) <= 1e-12 * m0(0, 0));
  CHECK(m0(4, 3) == -c * p.nu_vector);
  CHECK(m0(3, 3) == c * (p.nu_vector + p.mu));
  CHECK(m0(4, 4) == c * p.mu);
  CHECK(std::abs(vector_seasonality(0.8, 0.25, 1.0) - std::exp(0.8)) <= 1e-15);
}

TEST_CASE("validate rejects out-of-range parameters") {
  SirParams s;
  s.q = 1.2;
  CHECK_THROWS_AS(sir_model(s), Error);
  s = SirParams{};
  s.contact.amplitude = 1.0;
  CHECK_THROWS_AS(sir_model(s), Error);
  VectorHostParams v;
  v.delta = 1.0;
  CHECK_THROWS_AS(vector_host_model(v), Error);
  v = VectorHostParams{};
  v.omega = 1.5;
  CHECK_THROWS_AS(vector_host_model(v), Error);
}

TEST_CASE("models properties") {
  for (const auto& r : props::models()) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}
