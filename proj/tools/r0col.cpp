// r0col: reproduction numbers of periodic compartmental models.
//
//   r0col <task> --config run.json [--out DIR] [--override key=value ...]
//   r0col paper-repro [--out DIR] [--only NAME ...] [--dump-configs DIR]
//
// Exit status: 0 success, 2 configuration error, 3 numerical or I/O failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "r0col/cli/config.hpp"
#include "r0col/cli/run.hpp"

namespace {

using r0col::cli::json;

void report_failure(const r0col::Error& e, const std::string& path = {}) {
  json j{{"status", "error"}, {"code", r0col::to_string(e.code())}, {"message", e.what()}};
  if (!path.empty()) j["path"] = path;
  std::cerr << j.dump() << "\n";
}

json read_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw r0col::cli::ConfigError("--config", "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw r0col::cli::ConfigError("--config", path + " is not valid JSON");
  return j;
}

int execute(json raw, const std::string& task, const std::string& out, const std::vector<std::string>& overrides) {
  using namespace r0col::cli;
  try {
    if (!raw.is_object()) throw ConfigError("", "config must be a JSON object");
    if (raw.contains("task") && raw["task"].is_object() && raw["task"].contains("kind") &&
        raw["task"]["kind"] != task) {
      throw ConfigError("task.kind", "config is for task " + raw["task"]["kind"].dump() + ", not " + task);
    }
    for (const auto& o : overrides) apply_override(raw, o);
    if (!raw.contains("task") || raw["task"].is_null()) raw["task"] = json::object();
    if (raw["task"].is_object()) raw["task"]["kind"] = task;
    if (!out.empty()) set_path(raw, "output.dir", out, "--out");
    const RunConfig cfg = parse_config(raw);
    run(cfg, std::cout);
    return kExitOk;
  } catch (const ConfigError& e) {
    report_failure(e, e.path());
    return kExitConfig;
  } catch (const r0col::Error& e) {
    report_failure(e);
    return kExitNumerical;
  }
}

int paper_repro(const std::string& out, const std::vector<std::string>& only, const std::string& dump) {
  using namespace r0col::cli;
  const auto configs = bundled_configs();
  if (!dump.empty()) {
    std::filesystem::create_directories(dump);
    for (const auto& [name, cfg] : configs)
      write_text_file((std::filesystem::path(dump) / (name + ".json")).string(), cfg.dump(2) + "\n");
    return kExitOk;
  }
  int status = kExitOk;
  bool matched = only.empty();
  for (const auto& [name, cfg] : configs) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    matched = true;
    std::cout << "== " << name << "\n";
    const std::string dir = (std::filesystem::path(out.empty() ? "paper-repro" : out) / name).string();
    const int rc = execute(cfg, cfg["task"]["kind"].get<std::string>(), dir, {});
    status = std::max(status, rc);
  }
  if (!matched) {
    std::cerr << "no bundled configuration matches --only\n";
    return kExitConfig;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproduction numbers of periodic compartmental models by spectral collocation"};
  app.require_subcommand(1);

  struct TaskOptions {
    std::string config;
    std::string out;
    std::vector<std::string> overrides;
  };
  const std::vector<std::pair<std::string, std::string>> tasks = {
      {"r0", "dominant reproduction number R0_N"},
      {"spectrum", "all eigenvalues of the discrete next-generation operator (CSV re,im)"},
      {"eigenfunction", "phi and psi on a uniform grid (CSV t,phi_1..,psi_1..)"},
      {"convergence", "error against N with a fitted decay classification"},
      {"mom", "monodromy-operator baseline"},
      {"sweep", "periodic and averaged reproduction numbers over a parameter range"},
      {"averaged", "reproduction number of the time-averaged model"},
  };
  std::vector<TaskOptions> options(tasks.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CLI::App* sub = app.add_subcommand(tasks[i].first, tasks[i].second);
    sub->add_option("--config", options[i].config, "JSON run configuration")->required();
    sub->add_option("--out", options[i].out, "output directory (overrides output.dir)");
    sub->add_option("--override", options[i].overrides, "dotted key=value applied before validation");
    subs.push_back(sub);
  }
  std::string repro_out, dump;
  std::vector<std::string> only;
  CLI::App* repro = app.add_subcommand("paper-repro", "run the bundled benchmark configurations");
  repro->add_option("--out", repro_out, "output root (default ./paper-repro)");
  repro->add_option("--only", only, "run only the named configurations");
  repro->add_option("--dump-configs", dump, "write the bundled configurations to DIR and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : r0col::cli::kExitConfig;
  }

  if (repro->parsed()) return paper_repro(repro_out, only, dump);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return execute(read_config(options[i].config), tasks[i].first, options[i].out, options[i].overrides);
    } catch (const r0col::cli::ConfigError& e) {
      report_failure(e, e.path());
      return r0col::cli::kExitConfig;
    }
  }
  return r0col::cli::kExitConfig;
}
