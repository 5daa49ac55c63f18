#include "r0col/models.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "r0col/pencil.hpp"

namespace r0col {

namespace {

constexpr double kPi = std::numbers::pi;

double f2_kappa() { return 1.0 / (2.5 - 123.0 * std::sqrt(5.0) / 250.0); }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

const char* to_string(ContactRate::Kind kind) noexcept {
  switch (kind) {
    case ContactRate::Kind::F1: return "F1";
    case ContactRate::Kind::F2: return "F2";
    case ContactRate::Kind::F3: return "F3";
  }
  return "unknown";
}

const char* to_string(Splitting s) noexcept {
  switch (s) {
    case Splitting::R0: return "R0";
    case Splitting::HostType: return "host";
    case Splitting::VectorType: return "vector";
  }
  return "unknown";
}

double contact_rate(const ContactRate& choice, double t, double period) {
  const double x = 2.0 * kPi * t / period;
  switch (choice.kind) {
    case ContactRate::Kind::F1:
      return 1.0 + choice.amplitude * std::sin(x - choice.phase);
    case ContactRate::Kind::F2: {
      const double k = f2_kappa();
      const double s = std::sin(x);
      return k + k * (0.68 + s) / (1.0 + 2.0 / 3.0 * s);
    }
    case ContactRate::Kind::F3: {
      const double u = t / period;
      const bool high = (u >= 0.0 && u <= 0.4) || (u >= 0.6 && u <= 1.0);
      return 0.2 + (high ? 1.0 : 0.0);
    }
  }
  return 0.0;
}

double contact_rate_integral(const ContactRate& choice, double t, double period) {
  switch (choice.kind) {
    case ContactRate::Kind::F1: {
      const double w = 2.0 * kPi / period;
      return t + choice.amplitude / w * (std::cos(choice.phase) - std::cos(w * t - choice.phase));
    }
    case ContactRate::Kind::F2: {
      if (t == 0.0) return 0.0;
      auto f = [&](double s) { return contact_rate(choice, s, period); };
      return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 15, 1e-15);
    }
    case ContactRate::Kind::F3: {
      const double u1 = 0.4 * period;
      const double u2 = 0.6 * period;
      const double high = std::min(t, u1) + std::max(0.0, t - u2);
      return 0.2 * t + high;
    }
  }
  return 0.0;
}

void validate(const SirParams& p) {
  require(p.groups >= 1, "SIR needs at least one group");
  require(p.q >= 0.0 && p.q < 1.0, "q must lie in [0, 1)");
  require(p.gamma > 0.0 && p.mu > 0.0, "gamma and mu must be positive");
  require(p.population > 0.0, "population must be positive");
  require(p.period > 0.0, "period must be positive");
  if (p.contact.kind == ContactRate::Kind::F1) {
    require(p.contact.amplitude >= 0.0 && p.contact.amplitude < 1.0, "F1 amplitude must lie in [0, 1)");
    require(p.contact.phase >= 0.0 && p.contact.phase < 1.0, "F1 phase must lie in [0, 1)");
  }
}

PeriodicModel sir_model(const SirParams& p) {
  validate(p);
  PeriodicModel model;
  model.dim = p.groups;
  model.period = p.period;
  model.label = std::string("sir-") + to_string(p.contact.kind) + "-d" + std::to_string(p.groups);
  const std::size_t d = p.groups;
  // Equal group sizes: q f P_j P_k² / Σ P_h² = q f P / d.
  const double entry = p.q * p.population / static_cast<double>(d);
  const ContactRate contact = p.contact;
  const double period = p.period;

  if (contact.kind == ContactRate::Kind::F3) {
    model.breakpoints = {0.0, 0.4 * period, 0.6 * period, period};
    model.smoothness = Smoothness::PiecewiseAnalytic;
    model.birth = [d, entry](double, std::size_t piece) {
      const double f = piece == 1 ? 0.2 : 1.2;
      return Matrix(d, d, entry * f);
    };
  } else {
    model.breakpoints = {0.0, period};
    model.smoothness = Smoothness::Analytic;
    model.birth = [d, entry, contact, period](double t, std::size_t) {
      return Matrix(d, d, entry * contact_rate(contact, t, period));
    };
  }
  const double removal = p.gamma + p.mu;
  model.transition = [d, removal](double, std::size_t) { return removal * Matrix::identity(d); };
  return model;
}

double sir_r0_exact(const SirParams& p) {
  const AveragedCoefficients avg = period_average(sir_model(p));
  double trace = 0.0;
  for (std::size_t k = 0; k < p.groups; ++k) trace += avg.birth(k, k);
  return trace / (p.gamma + p.mu);
}

Vector sir_eigenfunction_exact(const SirParams& p, double t) {
  validate(p);
  const double r0 = sir_r0_exact(p);
  // Σ_k B_kk(θ) = q P f(θ) for equal groups.
  const double trace_integral = p.q * p.population * contact_rate_integral(p.contact, t, p.period);
  const double value = std::exp(trace_integral / r0 - (p.gamma + p.mu) * t) * p.population;
  return Vector(p.groups, value);
}

void validate(const VectorHostParams& p) {
  require(p.biting > 0.0 && p.nu_host > 0.0 && p.nu_vector > 0.0 && p.gamma > 0.0 && p.mu > 0.0,
          "vector-host rates must be positive");
  require(p.ratio > 0.0, "vector/host ratio must be positive");
  require(p.omega >= 0.0 && p.omega <= 1.0, "omega must lie in [0, 1]");
  require(p.q_host_from_vector >= 0.0 && p.q_host_from_vector <= 1.0 && p.q_vector_from_host >= 0.0 &&
              p.q_vector_from_host <= 1.0,
          "transmission probabilities must lie in [0, 1]");
  require(p.delta >= 0.0 && p.delta < 1.0, "delta must lie in [0, 1)");
  require(p.period > 0.0, "period must be positive");
}

double vector_seasonality(double delta, double t, double period) {
  return std::exp(delta * std::sin(2.0 * kPi * t / period));
}

Matrix vector_host_baseline_transition(const VectorHostParams& p) {
  const double c = kDaysPerYear;
  Matrix m(5, 5);
  m(0, 0) = c * p.nu_host;
  m(1, 0) = -c * (1.0 - p.omega) * p.nu_host;
  m(1, 1) = c * p.gamma;
  m(2, 0) = -c * p.omega * p.nu_host;
  m(2, 2) = c * p.gamma;
  m(3, 3) = c * (p.nu_vector + p.mu);
  m(4, 3) = -c * p.nu_vector;
  m(4, 4) = c * p.mu;
  return m;
}

Matrix vector_host_host_infection(const VectorHostParams& p) {
  Matrix b(5, 5);
  b(0, 4) = kDaysPerYear * p.biting * p.q_host_from_vector;
  return b;
}

Matrix vector_host_vector_infection(const VectorHostParams& p, double t) {
  Matrix b(5, 5);
  const double v = kDaysPerYear * p.biting * p.q_vector_from_host * p.ratio * vector_seasonality(p.delta, t, p.period);
  b(3, 1) = v;
  b(3, 2) = v;
  return b;
}

PeriodicModel vector_host_model(const VectorHostParams& p) {
  validate(p);
  PeriodicModel model;
  model.dim = 5;
  model.period = p.period;
  model.breakpoints = {0.0, p.period};
  model.smoothness = Smoothness::Analytic;
  model.label = std::string("vector-host-") + to_string(p.splitting);
  const Matrix m0 = vector_host_baseline_transition(p);
  const Matrix bh = vector_host_host_infection(p);
  switch (p.splitting) {
    case Splitting::R0:
      model.birth = [p, bh](double t, std::size_t) { return bh + vector_host_vector_infection(p, t); };
      model.transition = [m0](double, std::size_t) { return m0; };
      break;
    case Splitting::HostType:
      model.birth = [bh](double, std::size_t) { return bh; };
      model.transition = [p, m0](double t, std::size_t) { return m0 - vector_host_vector_infection(p, t); };
      break;
    case Splitting::VectorType:
      model.birth = [p](double t, std::size_t) { return vector_host_vector_infection(p, t); };
      model.transition = [m0, bh](double, std::size_t) { return m0 - bh; };
      break;
  }
  return model;
}

}  // namespace r0col
