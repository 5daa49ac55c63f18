#pragma once

// Task execution for the command-line tool. Every task writes a JSON
// summary (<prefix>.json) holding the effective configuration and the
// results; tabular tasks also write <prefix>.csv.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "r0col/cli/config.hpp"
#include "r0col/cli/report.hpp"

namespace r0col::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct ReferenceValue {
  double value = 0.0;
  std::string source;
};

// Closed form for SIR models, otherwise a Fourier solve at
// task.reference_N (the active scheme when the model has interior
// breakpoints, since Fourier cannot be used there).
ReferenceValue reference_value(const RunConfig& cfg, const PeriodicModel& model);

Mesh make_mesh(const RunConfig& cfg, std::size_t degree, const PeriodicModel& model);

SpectralSolution solve(const RunConfig& cfg, const PeriodicModel& model, const Mesh& mesh);

ConvergenceReport run_convergence(const RunConfig& cfg, const PeriodicModel& model);

// Columns: <parameter>, R0, averaged_R0 (and for vector-host R0_squared,
// T_H, T_V with their averaged counterparts).
CsvTable run_sweep(const RunConfig& cfg);

struct RunResult {
  json summary;
  std::vector<std::string> files;
};

// Executes the configured task, writes its files under cfg.output.dir and
// logs a short human-readable report. Numerical failures propagate as
// r0col::Error.
RunResult run(const RunConfig& cfg, std::ostream& log);

// Configurations reproducing the benchmark tables and figure data,
// identical to the files shipped in configs/.
std::vector<std::pair<std::string, json>> bundled_configs();

}  // namespace r0col::cli
