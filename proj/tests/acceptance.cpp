// Acceptance criteria, one PASS/FAIL line each. Tolerances are fixed here.
// Exit status is 0 when every criterion passes or fails only among those
// named with --known-failures.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "properties.hpp"
#include "r0col/models.hpp"
#include "r0col/mom.hpp"
#include "r0col/pencil.hpp"
#include "r0col/cli/report.hpp"

using namespace r0col;

namespace {

constexpr double kSirR0 = 11.504158733340011;
constexpr double kVectorHostR0 = 1.7852067573782;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SirParams sir(ContactRate::Kind kind = ContactRate::Kind::F1, std::size_t groups = 1) {
  SirParams p;
  p.contact.kind = kind;
  p.groups = groups;
  return p;
}

double sir_error(const SirParams& p, const Mesh& mesh,
                 DominantSelection selection = DominantSelection::RealInBand) {
  return std::abs(solve_r0(assemble(sir_model(p), mesh), SolveStrategy::FullSpectrum, selection).r0 - kSirR0);
}

double vh_r0(double delta, std::size_t n, Splitting splitting = Splitting::R0) {
  VectorHostParams v;
  v.delta = delta;
  v.splitting = splitting;
  return solve_r0(assemble(vector_host_model(v), fourier_mesh(n, 1.0))).r0;
}

Outcome ac1() {
  const double e35 = sir_error(sir(), fourier_mesh(35, 1.0));
  const double e25 = sir_error(sir(), fourier_mesh(25, 1.0));
  return {e35 <= 1e-9 && e25 >= 1e-8 && e25 <= 1e-5,
          fmt("N=35 error %.3g (<= 1e-9), ", e35) + fmt("N=25 error %.3g (in [1e-8, 1e-5])", e25)};
}

Outcome ac2() {
  std::ostringstream d;
  bool ok = true;
  for (std::size_t n : {25, 35}) {
    double base = 0.0;
    for (std::size_t groups : {1, 10, 50}) {
      const double e =
          std::abs(solve_r0_auto(assemble(sir_model(sir(ContactRate::Kind::F1, groups)), fourier_mesh(n, 1.0))).r0 -
                   kSirR0);
      if (groups == 1) base = e;
      const double ratio = e / base;
      ok = ok && ratio <= 10.0 && ratio >= 0.1;
      d << "N=" << n << " d=" << groups << fmt(": %.3g  ", e);
    }
  }
  return {ok, d.str() + "(factor 10 of d=1)"};
}

Outcome ac3() {
  std::ostringstream d;
  bool ok = true;
  for (auto kind : {ContactRate::Kind::F1, ContactRate::Kind::F2}) {
    std::vector<double> ns, logs;
    double prev = INFINITY;
    bool decreasing = true;
    for (std::size_t n : {11, 15, 19, 23, 27}) {
      const double e = sir_error(sir(kind), fourier_mesh(n, 1.0), DominantSelection::LargestReal);
      decreasing = decreasing && e < prev;
      prev = e;
      ns.push_back(static_cast<double>(n));
      logs.push_back(std::log(e));
    }
    const double r = cli::correlation(ns, logs);
    ok = ok && decreasing && r <= -0.99;
    d << to_string(kind) << " Fourier " << (decreasing ? "decreasing" : "NOT decreasing") << fmt(", corr %.5f; ", r);

    prev = INFINITY;
    decreasing = true;
    for (std::size_t n : {20, 40, 60, 80}) {
      const double e = sir_error(sir(kind), chebyshev_mesh(n, 1.0), DominantSelection::LargestReal);
      decreasing = decreasing && e < prev;
      prev = e;
    }
    ok = ok && decreasing;
    d << to_string(kind) << " Chebyshev " << (decreasing ? "decreasing" : "NOT decreasing") << "; ";
  }
  return {ok, d.str() + "(corr <= -0.99)"};
}

Outcome ac4() {
  const SirParams p = sir(ContactRate::Kind::F3);
  const std::vector<double> bp = {0.0, 0.4, 0.6, 1.0};
  std::ostringstream d;
  double prev = INFINITY;
  bool decreasing = true;
  for (std::size_t n : {8, 16, 24, 32}) {
    const double e = sir_error(p, piecewise_chebyshev_mesh(bp, n));
    decreasing = decreasing && e < prev;
    prev = e;
    d << "N=" << n << fmt(": %.3g  ", e);
  }
  const double single = sir_error(p, chebyshev_mesh(32, 1.0), DominantSelection::LargestReal);
  d << fmt("single piece N=32: %.3g", single);
  return {decreasing && prev <= 1e-8 && single >= 100.0 * prev, d.str()};
}

Outcome ac5() {
  const SpectralSolution s = solve_r0(assemble(sir_model(sir()), fourier_mesh(101, 1.0)));
  double worst = 0.0;
  std::size_t bad = 0, counted = 0;
  for (const auto& v : s.spectrum.values) {
    if (std::abs(v) <= 1e-8 * s.r0) continue;
    ++counted;
    const double dev = std::abs(std::abs(v - s.r0 / 2.0) - s.r0 / 2.0) / s.r0;
    worst = std::max(worst, dev);
    if (dev > 1e-6) ++bad;
  }
  return {bad == 0, fmt("worst relative deviation %.3g (<= 1e-6), ", worst) + std::to_string(bad) + " of " +
                        std::to_string(counted) + " eigenvalues outside"};
}

Outcome ac6() {
  const SirParams p = sir();
  const SpectralSolution s = solve_r0(assemble(sir_model(p), fourier_mesh(35, 1.0)));
  const double exact_sup = oracle::maximize([&](double t) { return sir_eigenfunction_exact(p, t)[0]; }, 0.0, 1.0);
  const double sup = oracle::maximize([&](double t) { return eigenfunction_at(s, t).phi[0]; }, 0.0, 1.0);
  double phi_err = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    phi_err = std::max(phi_err,
                       std::abs(eigenfunction_at(s, t).phi[0] / sup - sir_eigenfunction_exact(p, t)[0] / exact_sup));
  }
  double psi_err = 0.0;
  for (std::size_t i = 0; i < s.mesh.nodes.size(); ++i) {
    const double want = s.model.B(s.mesh.nodes[i])(0, 0) * s.phi[i][0] / s.r0;
    psi_err = std::max(psi_err, std::abs(s.psi[i][0] - want) / std::abs(want));
  }
  return {phi_err <= 1e-8 && psi_err <= 1e-12,
          fmt("phi error %.3g (<= 1e-8), ", phi_err) + fmt("psi relative error %.3g (<= 1e-12)", psi_err)};
}

Outcome ac7() {
  const double r25 = vh_r0(0.8, 25), r151 = vh_r0(0.8, 151);
  const double th = vh_r0(0.8, 25, Splitting::HostType), tv = vh_r0(0.8, 25, Splitting::VectorType);
  const double a = std::abs(r25 - r151), b = std::abs(r151 - kVectorHostR0), c = std::abs(th - r25 * r25),
               e = std::abs(th - tv);
  return {a <= 1e-10 && b <= 1e-10 && c <= 1e-8 && e <= 1e-9,
          fmt("|R0(25)-R0(151)| %.3g, ", a) + fmt("|R0(151)-1.7852067573782| %.3g, ", b) +
              fmt("|T_H-R0^2| %.3g, ", c) + fmt("|T_H-T_V| %.3g", e)};
}

Outcome ac8() {
  std::ostringstream d;
  bool ok = true;
  double gap = -INFINITY;
  for (int k = 1; k <= 9; ++k) {
    VectorHostParams v;
    v.delta = k / 10.0;
    const double periodic = solve_r0(assemble(vector_host_model(v), fourier_mesh(25, 1.0))).r0;
    const double averaged = averaged_r0(vector_host_model(v));
    ok = ok && periodic < averaged && averaged - periodic > gap;
    gap = averaged - periodic;
  }
  d << fmt("gap at delta=0.9: %.4g; ", gap);
  VectorHostParams flat;
  flat.delta = 0.0;
  const double zero =
      std::abs(averaged_r0(vector_host_model(flat)) - solve_r0(assemble(vector_host_model(flat), fourier_mesh(25, 1.0))).r0);
  ok = ok && zero <= 1e-9;
  return {ok, d.str() + fmt("delta=0 difference %.3g (<= 1e-9)", zero) + (ok ? "" : "; ordering or monotonicity violated")};
}

Outcome ac9() {
  const double s = std::abs(mom_solve(sir_model(sir()), 1e-10, 1e-8).r0 - kSirR0);
  VectorHostParams v;
  const double m = mom_solve(vector_host_model(v), 1e-10, 1e-8).r0;
  const double vh = std::abs(m - vh_r0(0.8, 41));
  return {s <= 1e-6 && vh <= 1e-6, fmt("SIR %.3g (<= 1e-6), ", s) + fmt("vector-host vs pencil N=41 %.3g (<= 1e-6)", vh)};
}

Outcome ac10() {
  const std::vector<props::Result> results =
      props::all((std::filesystem::path(R0COL_SCRATCH_DIR) / "acceptance").string(), R0COL_TOOL);
  std::size_t failed = 0;
  std::string names;
  for (const auto& r : results) {
    if (r.passed) continue;
    ++failed;
    names += "\n      " + r.module + ": " + r.name + " (" + r.detail + ")";
  }
  return {failed == 0, std::to_string(results.size() - failed) + " of " + std::to_string(results.size()) +
                           " properties pass" + names};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> known;
  app.add_option("--known-failures", known, "criteria (e.g. AC3) whose failure does not change the exit status")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  const std::set<std::string> expected(known.begin(), known.end());

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};

  int unexpected = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail;
    if (!o.passed && expected.count(name)) std::cout << " [known failure]";
    std::cout << std::endl;
    if (!o.passed && !expected.count(name)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
