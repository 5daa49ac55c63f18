#include "r0col/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "r0col/cli/pool.hpp"
#include "r0col/mom.hpp"

namespace r0col::cli {

namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Fourier: return "fourier";
    case Scheme::Chebyshev: return "chebyshev";
    case Scheme::PiecewiseChebyshev: return "chebyshev-piecewise";
  }
  return "unknown";
}

std::optional<double> closed_form(const RunConfig& cfg) {
  if (cfg.family != Family::Sir) return std::nullopt;
  return sir_r0_exact(sir_params(cfg.parameters));
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json solution_json(const SpectralSolution& s) {
  json j;
  j["R0"] = s.r0;
  j["scheme"] = scheme_name(s.mesh.scheme);
  j["N"] = s.mesh.degree;
  j["unknowns"] = s.mesh.unknown_count() * s.model.dim;
  j["strategy"] = s.strategy == SolveStrategy::FullSpectrum ? "full" : "power";
  j["diagnostics"] = {{"residual", s.diagnostics.residual},
                      {"dominance_gap", s.diagnostics.dominance_gap},
                      {"pivot_growth", s.diagnostics.pivot_growth},
                      {"power_iterations", s.diagnostics.power_iterations},
                      {"nonnegative", s.diagnostics.nonnegative},
                      {"dominant_is_real", s.diagnostics.dominant_is_real}};
  return j;
}

std::string path_in(const RunConfig& cfg, const std::string& suffix) {
  return (fs::path(cfg.output.dir) / (cfg.output.prefix + suffix)).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + dir + ": " + ec.message());
}

json parameters_with(const RunConfig& cfg, double value) {
  json p = cfg.parameters;
  set_path(p, cfg.task.sweep_parameter, value, "task.sweep.parameter");
  return p;
}

}  // namespace

Mesh make_mesh(const RunConfig& cfg, std::size_t degree, const PeriodicModel& model) {
  switch (cfg.scheme.method) {
    case Scheme::Fourier: return fourier_mesh(degree, model.period, cfg.scheme.allow_even);
    case Scheme::Chebyshev: return chebyshev_mesh(degree, model.period);
    case Scheme::PiecewiseChebyshev: {
      const std::vector<double>& bp = cfg.scheme.breakpoints.empty() ? model.breakpoints : cfg.scheme.breakpoints;
      return piecewise_chebyshev_mesh(bp, degree);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scheme");
}

SpectralSolution solve(const RunConfig& cfg, const PeriodicModel& model, const Mesh& mesh) {
  const DiscretePencil pencil = assemble(model, mesh);
  switch (cfg.task.strategy) {
    case Strategy::Full: return solve_r0(pencil, SolveStrategy::FullSpectrum, cfg.task.selection);
    case Strategy::Power: return solve_r0(pencil, SolveStrategy::PowerFastPath, cfg.task.selection);
    case Strategy::Auto: return solve_r0_auto(pencil, cfg.task.selection);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strategy");
}

ReferenceValue reference_value(const RunConfig& cfg, const PeriodicModel& model) {
  if (auto exact = closed_form(cfg)) return {*exact, "closed-form"};
  RunConfig ref = cfg;
  ref.task.selection = DominantSelection::RealInBand;
  if (model.piece_count() == 1) {
    ref.scheme.method = Scheme::Fourier;
    ref.scheme.breakpoints.clear();
  }
  std::size_t n = cfg.task.reference_degree;
  if (ref.scheme.method == Scheme::Fourier && n % 2 == 0 && !ref.scheme.allow_even) ++n;
  const SpectralSolution s = solve(ref, model, make_mesh(ref, n, model));
  return {s.r0, "self-reference: " + scheme_name(ref.scheme.method) + " N=" + std::to_string(n)};
}

ConvergenceReport run_convergence(const RunConfig& cfg, const PeriodicModel& model) {
  ConvergenceReport report;
  const ReferenceValue ref = reference_value(cfg, model);
  report.reference = ref.value;
  report.reference_source = ref.source;
  const auto& degrees = cfg.scheme.degrees;
  auto job = [&](std::size_t i) {
    const Mesh mesh = make_mesh(cfg, degrees[i], model);
    ConvergenceRow row;
    row.degree = degrees[i];
    if (cfg.output.timing) {
      solve(cfg, model, mesh);  // warm-up, discarded
      const auto start = std::chrono::steady_clock::now();
      const SpectralSolution s = solve(cfg, model, mesh);
      row.runtime = seconds_since(start);
      row.r0 = s.r0;
      row.dominant_is_real = s.diagnostics.dominant_is_real;
    } else {
      const SpectralSolution s = solve(cfg, model, mesh);
      row.r0 = s.r0;
      row.dominant_is_real = s.diagnostics.dominant_is_real;
    }
    row.error = std::abs(row.r0 - ref.value);
    return row;
  };
  // Timed runs are sequential so the measurements do not compete.
  const std::size_t workers = cfg.output.timing ? 1 : worker_count();
  report.rows = parallel_map<ConvergenceRow>(degrees.size(), workers, job);
  report.fit = classify_decay(report.rows, report.reference);
  return report;
}

CsvTable run_sweep(const RunConfig& cfg) {
  const std::vector<double>& values = cfg.task.sweep_values;
  const bool vector_host = cfg.family == Family::VectorHost;
  CsvTable table;
  table.header = {cfg.task.sweep_parameter, "R0", "averaged_R0"};
  if (vector_host)
    table.header = {cfg.task.sweep_parameter, "R0",          "R0_squared",  "T_H",        "T_V",
                    "averaged_R0",            "averaged_R0_squared", "averaged_T_H", "averaged_T_V"};
  const std::size_t degree = cfg.scheme.degrees.front();
  auto job = [&](std::size_t i) -> std::vector<double> {
    json params = parameters_with(cfg, values[i]);
    auto periodic_and_averaged = [&](const json& p) {
      const PeriodicModel model = build_model(cfg.family, p, cfg.scheme.method);
      const double r0 = solve(cfg, model, make_mesh(cfg, degree, model)).r0;
      return std::pair{r0, averaged_r0(model)};
    };
    if (!vector_host) {
      const auto [r0, avg] = periodic_and_averaged(params);
      return {values[i], r0, avg};
    }
    params["splitting"] = "R0";
    const auto [r0, avg_r0] = periodic_and_averaged(params);
    params["splitting"] = "host";
    const auto [th, avg_th] = periodic_and_averaged(params);
    params["splitting"] = "vector";
    const auto [tv, avg_tv] = periodic_and_averaged(params);
    return {values[i], r0, r0 * r0, th, tv, avg_r0, avg_r0 * avg_r0, avg_th, avg_tv};
  };
  table.rows = parallel_map<std::vector<double>>(values.size(), worker_count(), job);
  return table;
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  ensure_dir(cfg.output.dir);
  RunResult out;
  json& summary = out.summary;
  summary["task"] = to_string(cfg.task.kind);
  summary["status"] = "ok";
  summary["config"] = cfg.effective;
  json& results = summary["results"];
  json timing = json::object();
  const auto started = std::chrono::steady_clock::now();

  auto write_csv = [&](const std::string& suffix, const CsvTable& table) {
    const std::string path = path_in(cfg, suffix);
    write_text_file(path, to_csv(table));
    out.files.push_back(path);
  };

  const PeriodicModel model = build_model(cfg.family, cfg.parameters, cfg.scheme.method);
  const std::optional<double> exact = closed_form(cfg);
  auto add_reference = [&](double value) {
    if (!exact) return;
    results["reference"] = {{"value", *exact}, {"source", "closed-form"}, {"error", std::abs(value - *exact)}};
  };

  switch (cfg.task.kind) {
    case Task::R0:
    case Task::Spectrum:
    case Task::Eigenfunction: {
      const Mesh mesh = make_mesh(cfg, cfg.scheme.degrees.front(), model);
      const auto t0 = std::chrono::steady_clock::now();
      const SpectralSolution s = solve(cfg, model, mesh);
      timing["solve_s"] = seconds_since(t0);
      results = solution_json(s);
      add_reference(s.r0);
      log << to_string(cfg.task.kind) << ": R0_N = " << format_double(s.r0) << " (" << scheme_name(mesh.scheme)
          << " N=" << mesh.degree << ", " << results["strategy"].get<std::string>() << ")\n";
      if (cfg.task.kind == Task::Spectrum) {
        std::vector<Complex> values = s.spectrum.values;
        std::stable_sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
          if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
          if (a.real() != b.real()) return a.real() > b.real();
          return a.imag() > b.imag();
        });
        CsvTable table{{"re", "im"}, {}};
        for (const auto& v : values) table.rows.push_back({v.real(), v.imag()});
        write_csv(".csv", table);
        results["eigenvalue_count"] = values.size();
      } else if (cfg.task.kind == Task::Eigenfunction) {
        const std::size_t dim = model.dim;
        CsvTable table;
        table.header.push_back("t");
        for (std::size_t i = 1; i <= dim; ++i) table.header.push_back("phi_" + std::to_string(i));
        for (std::size_t i = 1; i <= dim; ++i) table.header.push_back("psi_" + std::to_string(i));
        const std::size_t m = cfg.task.grid_points;
        for (std::size_t k = 0; k < m; ++k) {
          const double t = k + 1 == m ? model.period
                                      : model.period * static_cast<double>(k) / static_cast<double>(m - 1);
          const EigenfunctionSample e = eigenfunction_at(s, t);
          std::vector<double> row{t};
          row.insert(row.end(), e.phi.begin(), e.phi.end());
          row.insert(row.end(), e.psi.begin(), e.psi.end());
          table.rows.push_back(std::move(row));
        }
        write_csv(".csv", table);
        results["grid_points"] = m;
      }
      break;
    }
    case Task::Convergence: {
      const ConvergenceReport report = run_convergence(cfg, model);
      write_csv(".csv", convergence_table(report));
      results["reference"] = {{"value", report.reference}, {"source", report.reference_source}};
      json rows = json::array();
      for (const auto& r : report.rows)
        rows.push_back({{"N", r.degree}, {"R0_N", r.r0}, {"error", r.error}, {"dominant_is_real", r.dominant_is_real}});
      results["rows"] = rows;
      results["fit"] = {{"classification", to_string(report.fit.kind)},
                        {"points", report.fit.points},
                        {"geometric_rate", report.fit.geometric_rate},
                        {"geometric_correlation", report.fit.geometric_correlation},
                        {"algebraic_order", report.fit.algebraic_order},
                        {"algebraic_correlation", report.fit.algebraic_correlation}};
      if (cfg.output.timing) {
        json rt = json::array();
        for (const auto& r : report.rows) rt.push_back(r.runtime.value_or(0.0));
        timing["runtime_s"] = rt;
      }
      log << "convergence: reference " << format_double(report.reference) << " (" << report.reference_source << ")\n";
      for (const auto& r : report.rows)
        log << "  N=" << r.degree << "  R0_N=" << format_double(r.r0) << "  error=" << format_double(r.error)
            << (r.dominant_is_real ? "" : "  (complex modes dominate)") << "\n";
      log << "  decay: " << to_string(report.fit.kind) << "\n";
      break;
    }
    case Task::Mom: {
      const auto t0 = std::chrono::steady_clock::now();
      const MomSolveReport rep = mom_solve(model, cfg.task.rtol_ode, cfg.task.tol_root);
      timing["solve_s"] = seconds_since(t0);
      results["R0"] = rep.r0;
      results["evaluations"] = rep.evaluations;
      results["bracket"] = {rep.bracket_low, rep.bracket_high};
      results["residual"] = rep.residual;
      add_reference(rep.r0);
      CsvTable history{{"lambda", "rho_minus_one"}, {}};
      for (const auto& h : rep.history) history.rows.push_back({h.lambda, h.rho_minus_one});
      write_csv(".csv", history);
      log << "mom: R0 = " << format_double(rep.r0) << " after " << rep.evaluations << " monodromy evaluations\n";
      break;
    }
    case Task::Sweep: {
      const CsvTable table = run_sweep(cfg);
      write_csv(".csv", table);
      results["rows"] = table.rows.size();
      log << "sweep: " << table.rows.size() << " values of " << cfg.task.sweep_parameter << "\n";
      break;
    }
    case Task::Averaged: {
      const AveragedCoefficients avg = period_average(model);
      results["averaged_R0"] = averaged_r0(model);
      results["B_bar"] = matrix_to_json(avg.birth);
      results["M_bar"] = matrix_to_json(avg.transition);
      log << "averaged: R0 = " << format_double(results["averaged_R0"].get<double>()) << "\n";
      break;
    }
  }

  if (cfg.output.timing) {
    timing["total_s"] = seconds_since(started);
    summary["timing"] = timing;
  }
  const std::string summary_path = path_in(cfg, ".json");
  out.files.push_back(summary_path);
  summary["files"] = json::array();
  for (const auto& f : out.files) summary["files"].push_back(fs::path(f).filename().string());
  write_text_file(summary_path, summary.dump(2) + "\n");
  return out;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("R0_NUM_THREADS")) {
    const std::string s(env);
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || v < 1) throw ConfigError("R0_NUM_THREADS", "expected a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::pair<std::string, json>> bundled_configs() {
  std::vector<std::pair<std::string, json>> out;
  auto add = [&](const std::string& name, json cfg) {
    cfg["output"]["prefix"] = name;
    out.emplace_back(name, std::move(cfg));
  };
  auto range = [](int from, int to, int step) {
    json a = json::array();
    for (int n = from; n <= to; n += step) a.push_back(n);
    return a;
  };

  // Multi-group SIR: pencil at N = 25, 35 and the monodromy baseline.
  for (int d : {10, 50, 100}) {
    add("table3-fourier-d" + std::to_string(d),
        {{"model", {{"family", "sir"}, {"parameters", {{"groups", d}}}}},
         {"scheme", {{"method", "fourier"}, {"N", {25, 35}}}},
         {"task", {{"kind", "convergence"}, {"strategy", "auto"}, {"selection", "real-in-band"}}}});
    add("table3-mom-d" + std::to_string(d),
        {{"model", {{"family", "sir"}, {"parameters", {{"groups", d}}}}},
         {"task", {{"kind", "mom"}, {"rtol_ode", 1e-10}, {"tol_root", 1e-8}}}});
  }
  // Vector-host reproduction numbers at N = 25, delta = 0.8.
  for (const char* s : {"R0", "host", "vector"}) {
    add(std::string("table4-") + s, {{"model", {{"family", "vector-host"}, {"parameters", {{"splitting", s}}}}},
                                     {"scheme", {{"method", "fourier"}, {"N", 25}}},
                                     {"task", {{"kind", "r0"}}}});
  }
  // SIR error against N for each contact profile.
  for (const char* f : {"F1", "F2"}) {
    add(std::string("fig1-") + f + "-fourier",
        {{"model", {{"family", "sir"}, {"parameters", {{"contact", {{"kind", f}}}}}}},
         {"scheme", {{"method", "fourier"}, {"N", range(11, 51, 2)}}},
         {"task", {{"kind", "convergence"}}}});
    add(std::string("fig1-") + f + "-chebyshev",
        {{"model", {{"family", "sir"}, {"parameters", {{"contact", {{"kind", f}}}}}}},
         {"scheme", {{"method", "chebyshev"}, {"N", range(10, 120, 10)}}},
         {"task", {{"kind", "convergence"}}}});
  }
  add("fig1-F3-piecewise", {{"model", {{"family", "sir"}, {"parameters", {{"contact", {{"kind", "F3"}}}}}}},
                            {"scheme", {{"method", "chebyshev-piecewise"}, {"N", range(4, 40, 4)}}},
                            {"task", {{"kind", "convergence"}}}});
  // Vector-host error against N, self-referenced at N = 151.
  for (const char* s : {"R0", "host", "vector"}) {
    add(std::string("fig3-") + s, {{"model", {{"family", "vector-host"}, {"parameters", {{"splitting", s}}}}},
                                   {"scheme", {{"method", "fourier"}, {"N", range(5, 75, 4)}}},
                                   {"task", {{"kind", "convergence"}, {"reference_N", 151}}}});
  }
  // Periodic against averaged reproduction numbers as delta varies.
  {
    json deltas = json::array();
    for (int k = 0; k <= 19; ++k) deltas.push_back(k / 20.0);
    add("fig5-sweep", {{"model", {{"family", "vector-host"}}},
                       {"scheme", {{"method", "fourier"}, {"N", 25}}},
                       {"task", {{"kind", "sweep"}, {"sweep", {{"parameter", "delta"}, {"values", deltas}}}}}});
  }
  return out;
}

}  // namespace r0col::cli
