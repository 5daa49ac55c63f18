#include "r0col/mom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "r0col/pencil.hpp"

namespace r0col {

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI controller constants.
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
constexpr double kBeta = 0.04;
constexpr double kAlpha = 0.2 - 0.75 * kBeta;

class MatrixRhs {
 public:
  MatrixRhs(const PeriodicModel& model, double lambda, std::size_t piece, IntegratorStats& stats)
      : model_(model), inv_lambda_(1.0 / lambda), piece_(piece), stats_(stats) {}

  // out = (B(t)/λ − M(t)) · y, with y a d×d matrix stored row-major.
  void operator()(double t, const Vector& y, Vector& out) const {
    const std::size_t d = model_.dim;
    const Matrix b = model_.birth(t, piece_);
    const Matrix m = model_.transition(t, piece_);
    ++stats_.evaluations;
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        const double aik = inv_lambda_ * b(i, k) - m(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < d; ++j) out[i * d + j] += aik * y[k * d + j];
      }
    }
  }

 private:
  const PeriodicModel& model_;
  double inv_lambda_;
  std::size_t piece_;
  IntegratorStats& stats_;
};

void combine(Vector& out, const Vector& y, double h, std::initializer_list<std::pair<double, const Vector*>> terms) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    double acc = 0.0;
    for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
    out[i] = y[i] + h * acc;
  }
}

double scaled_norm(const Vector& e, const Vector& y0, const Vector& y1, double rtol, double atol) {
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = e[i] / sk;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(e.size()));
}

void integrate_segment(const MatrixRhs& rhs, double t0, double t1, Vector& y, double rtol, double atol,
                       IntegratorStats& stats) {
  const std::size_t n = y.size();
  Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), stage(n), y_new(n), err(n);
  rhs(t0, y, k1);

  const double span = t1 - t0;
  double h;
  {
    // Initial step from the ratio of solution and derivative scales.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = atol + rtol * std::abs(y[i]);
      d0 += (y[i] / sk) * (y[i] / sk);
      d1 += (k1[i] / sk) * (k1[i] / sk);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h = std::min(h, span);
  }

  double t = t0;
  double err_old = 1e-4;
  bool last_rejected = false;
  while (t < t1) {
    bool final_step = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      final_step = true;
    }
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw Error(ErrorCode::StepSizeUnderflow, "step size underflow at t = " + std::to_string(t));
    }
    combine(stage, y, h, {{a21, &k1}});
    rhs(t + c2 * h, stage, k2);
    combine(stage, y, h, {{a31, &k1}, {a32, &k2}});
    rhs(t + c3 * h, stage, k3);
    combine(stage, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(t + c4 * h, stage, k4);
    combine(stage, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(t + c5 * h, stage, k5);
    combine(stage, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    rhs(t + h, stage, k6);
    combine(y_new, y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const double t_new = final_step ? t1 : t + h;
    rhs(t_new, y_new, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double e = scaled_norm(err, y, y_new, rtol, atol);
    if (!std::isfinite(e)) {
      ++stats.rejected;
      h *= kFacMin;
      last_rejected = true;
      continue;
    }

    if (e <= 1.0) {
      ++stats.steps;
      t = t_new;
      y.swap(y_new);
      k1.swap(k7);  // first-same-as-last
      double fac = e == 0.0 ? kFacMax : kSafety * std::pow(e, -kAlpha) * std::pow(err_old, kBeta);
      fac = std::clamp(fac, kFacMin, kFacMax);
      if (last_rejected) fac = std::min(fac, 1.0);
      h *= fac;
      err_old = std::max(e, 1e-4);
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::max(kFacMin, kSafety * std::pow(e, -kAlpha));
      last_rejected = true;
    }
  }
}

}  // namespace

Matrix principal_solution(const PeriodicModel& model, double lambda, double t0, double t1, double rtol,
                          double atol, IntegratorStats* stats) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  if (!(t1 >= t0)) throw Error(ErrorCode::InvalidArgument, "principal_solution needs t1 >= t0");
  IntegratorStats local;
  IntegratorStats& st = stats ? *stats : local;
  st.rtol = rtol;
  st.atol = atol;
  const std::size_t d = model.dim;
  Vector y(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) y[i * d + i] = 1.0;

  std::vector<double> cuts{t0};
  for (double bp : model.breakpoints)
    if (bp > t0 && bp < t1) cuts.push_back(bp);
  cuts.push_back(t1);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    if (b <= a) continue;
    const MatrixRhs rhs(model, lambda, model.piece_at(0.5 * (a + b)), st);
    integrate_segment(rhs, a, b, y, rtol, atol, st);
  }
  Matrix u(d, d);
  std::copy(y.begin(), y.end(), u.data().begin());
  return u;
}

MonodromyResult monodromy(const PeriodicModel& model, double lambda, double rtol, double atol) {
  MonodromyResult result;
  result.lambda = lambda;
  result.monodromy = principal_solution(model, lambda, 0.0, model.period, rtol, atol, &result.stats);
  result.spectral_radius = spectral_radius(result.monodromy);
  return result;
}

BrentResult brent_zero(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                       double xtol, double ftol, int max_iter) {
  if (fa * fb > 0.0) throw Error(ErrorCode::BracketFailure, "brent_zero needs a sign change");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  BrentResult out;
  for (int it = 0; it <= max_iter; ++it) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * xtol * std::max(1.0, std::abs(b));
    const double xm = 0.5 * (c - b);
    out = {b, fb, c, it};
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= ftol) return out;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm >= 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw Error(ErrorCode::NoConvergence, "Brent iteration limit reached");
}

MomSolveReport mom_solve(const PeriodicModel& model, double rtol_ode, double tol_root) {
  MomSolveReport report;
  const double atol = rtol_ode * 1e-2;
  auto g = [&](double lambda) {
    const double value = monodromy(model, lambda, rtol_ode, atol).spectral_radius - 1.0;
    report.history.push_back({lambda, value});
    ++report.evaluations;
    return value;
  };

  const double center = averaged_r0(model);
  if (!(center > 0.0)) throw Error(ErrorCode::BracketFailure, "averaged R0 is zero; no positive root to bracket");
  double lo = center / kInitialBracketFactor;
  double hi = center * kInitialBracketFactor;
  double glo = g(lo);
  double ghi = g(hi);
  // ρ(U^(λ)) decreases in λ: need g(lo) > 0 > g(hi).
  int expansions = 0;
  while ((glo <= 0.0 || ghi >= 0.0) && expansions < kMaxBracketExpansions) {
    if (glo <= 0.0) {
      hi = lo;
      ghi = glo;
      lo /= 2.0;
      glo = g(lo);
    } else {
      lo = hi;
      glo = ghi;
      hi *= 2.0;
      ghi = g(hi);
    }
    ++expansions;
  }
  if (glo * ghi > 0.0 || (glo <= 0.0 && ghi >= 0.0)) {
    std::string scan;
    for (const auto& s : report.history)
      scan += " (" + std::to_string(s.lambda) + ", " + std::to_string(s.rho_minus_one) + ")";
    throw Error(ErrorCode::BracketFailure, "no sign change of rho - 1 found:" + scan);
  }
  if (glo == 0.0) {
    report.r0 = lo;
    report.residual = 0.0;
    report.bracket_low = report.bracket_high = lo;
    return report;
  }
  if (ghi == 0.0) {
    report.r0 = hi;
    report.residual = 0.0;
    report.bracket_low = report.bracket_high = hi;
    return report;
  }
  const BrentResult root = brent_zero(g, lo, hi, glo, ghi, tol_root, tol_root);
  report.r0 = root.root;
  report.residual = std::abs(root.value);
  report.bracket_low = std::min(root.root, root.other_end);
  report.bracket_high = std::max(root.root, root.other_end);
  return report;
}

}  // namespace r0col
