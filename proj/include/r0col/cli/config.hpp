#pragma once

// Run configuration: JSON in, validated and fully defaulted. The effective
// configuration is kept as JSON so a run can be reproduced from its summary.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "r0col/collocation.hpp"
#include "r0col/error.hpp"
#include "r0col/model.hpp"
#include "r0col/models.hpp"
#include "r0col/pencil.hpp"

namespace r0col::cli {

using nlohmann::json;

// Config error tied to a dotted field path, e.g. "scheme.N[2]".
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(ErrorCode::Config, (path.empty() ? std::string("<root>") : path) + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Family { Sir, VectorHost, CustomSamples };
enum class Task { R0, Spectrum, Eigenfunction, Convergence, Mom, Sweep, Averaged };
enum class Strategy { Full, Power, Auto };

const char* to_string(Family f) noexcept;
const char* to_string(Task t) noexcept;
const char* to_string(Strategy s) noexcept;

Task parse_task(std::string_view name);  // throws ConfigError on unknown names

struct SchemeConfig {
  Scheme method = Scheme::Fourier;
  std::vector<std::size_t> degrees;  // one entry unless the task is a convergence study
  std::vector<double> breakpoints;   // piecewise only; empty means "use the model's"
  bool allow_even = false;
};

struct TaskConfig {
  Task kind = Task::R0;
  Strategy strategy = Strategy::Full;
  DominantSelection selection = DominantSelection::RealInBand;
  std::size_t grid_points = 501;       // eigenfunction
  std::size_t reference_degree = 151;  // convergence self-reference
  double rtol_ode = 1e-10;             // mom
  double tol_root = 1e-8;              // mom
  std::string sweep_parameter;         // dotted path under model.parameters
  std::vector<double> sweep_values;
};

struct OutputConfig {
  std::string dir = ".";
  std::string prefix;  // file-name prefix, defaults to the task name
  bool timing = false;
};

struct RunConfig {
  Family family = Family::Sir;
  json parameters;  // family parameters with every default filled in
  SchemeConfig scheme;
  TaskConfig task;
  OutputConfig output;
  json effective;  // canonical JSON form of everything above
};

// Validates `raw` and fills defaults. Unknown keys and type or range errors
// throw ConfigError naming the offending field.
RunConfig parse_config(const json& raw);

// Applies "a.b.c=value" to a raw config. The value is parsed as JSON and
// taken as a string when that fails. Intermediate objects are created.
void apply_override(json& raw, std::string_view assignment);

// Sets a dotted path (relative to `root`) to `value`.
void set_path(json& root, std::string_view dotted, json value, const std::string& where);

// Builds the model described by the family and parameters. `scheme`
// selects the interpolation basis for sampled coefficients.
PeriodicModel build_model(Family family, const json& parameters, Scheme scheme);

// Typed views of validated family parameters.
SirParams sir_params(const json& parameters);
VectorHostParams vector_host_params(const json& parameters);

}  // namespace r0col::cli
