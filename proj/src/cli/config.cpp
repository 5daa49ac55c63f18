#include "r0col/cli/config.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include "r0col/cli/sampled_model.hpp"
#include "r0col/models.hpp"

namespace r0col::cli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const char* type_name(const json& j) { return j.type_name(); }

// Reads one JSON object, remembering which keys were consumed so the rest
// can be rejected as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, std::string("expected an object, got ") + type_name(j_));
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return join(path_, key); }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback, const std::function<bool(double)>& ok,
                const char* requirement) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(at(key), std::string("expected a number, got ") + type_name(*v));
    const double x = v->get<double>();
    if (!std::isfinite(x) || !ok(x)) throw ConfigError(at(key), std::string("must be ") + requirement);
    return x;
  }

  std::size_t count(const std::string& key, std::size_t fallback, std::size_t minimum) {
    const json* v = find(key);
    if (!v) return fallback;
    return as_count(*v, at(key), minimum);
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(at(key), std::string("expected a boolean, got ") + type_name(*v));
    return v->get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(at(key), std::string("expected a string, got ") + type_name(*v));
    return v->get<std::string>();
  }

  const json& required(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(at(key), "required field is missing");
    return *v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
  }

  static std::size_t as_count(const json& v, const std::string& where, std::size_t minimum) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw ConfigError(where, std::string("expected an integer, got ") + type_name(v));
    const auto x = v.get<long long>();
    if (x < static_cast<long long>(minimum)) throw ConfigError(where, "must be at least " + std::to_string(minimum));
    return static_cast<std::size_t>(x);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

auto positive = [](double x) { return x > 0.0; };
auto unit_open = [](double x) { return x >= 0.0 && x < 1.0; };
auto unit_closed = [](double x) { return x >= 0.0 && x <= 1.0; };
auto any_value = [](double) { return true; };

template <class Enum>
Enum choose(const std::string& value, const std::string& where,
            std::initializer_list<std::pair<const char*, Enum>> options) {
  std::string list;
  for (const auto& [name, e] : options) {
    if (value == name) return e;
    list += list.empty() ? name : std::string(", ") + name;
  }
  throw ConfigError(where, "unknown value \"" + value + "\" (expected one of: " + list + ")");
}

json sir_parameters(const json& raw, const std::string& path) {
  ObjectReader r(raw, path);
  SirParams p;
  json out;
  out["groups"] = r.count("groups", p.groups, 1);
  out["q"] = r.number("q", p.q, unit_open, "in [0, 1)");
  out["gamma"] = r.number("gamma", p.gamma, positive, "positive (per year)");
  out["mu"] = r.number("mu", p.mu, positive, "positive (per year)");
  out["population"] = r.number("population", p.population, positive, "positive");
  out["period"] = r.number("period", p.period, positive, "positive (years)");
  json contact = json::object();
  if (const json* c = r.find("contact")) contact = *c;
  ObjectReader cr(contact, r.at("contact"));
  const std::string kind = cr.text("kind", "F1");
  choose<ContactRate::Kind>(kind, cr.at("kind"),
                            {{"F1", ContactRate::Kind::F1}, {"F2", ContactRate::Kind::F2}, {"F3", ContactRate::Kind::F3}});
  out["contact"]["kind"] = kind;
  if (kind == "F1") {
    out["contact"]["amplitude"] = cr.number("amplitude", p.contact.amplitude, unit_open, "in [0, 1)");
    out["contact"]["phase"] = cr.number("phase", p.contact.phase, unit_open, "in [0, 1)");
  } else {
    for (const char* key : {"amplitude", "phase"})
      if (contact.contains(key)) throw ConfigError(cr.at(key), "only F1 takes this parameter");
  }
  cr.finish();
  r.finish();
  return out;
}

json vector_host_parameters(const json& raw, const std::string& path) {
  ObjectReader r(raw, path);
  VectorHostParams p;
  json out;
  out["biting"] = r.number("biting", p.biting, positive, "positive (per day)");
  out["q_host_from_vector"] = r.number("q_host_from_vector", p.q_host_from_vector, unit_closed, "in [0, 1]");
  out["q_vector_from_host"] = r.number("q_vector_from_host", p.q_vector_from_host, unit_closed, "in [0, 1]");
  out["nu_host"] = r.number("nu_host", p.nu_host, positive, "positive (per day)");
  out["nu_vector"] = r.number("nu_vector", p.nu_vector, positive, "positive (per day)");
  out["omega"] = r.number("omega", p.omega, unit_closed, "in [0, 1]");
  out["gamma"] = r.number("gamma", p.gamma, positive, "positive (per day)");
  out["mu"] = r.number("mu", p.mu, positive, "positive (per day)");
  out["ratio"] = r.number("ratio", p.ratio, positive, "positive");
  out["delta"] = r.number("delta", p.delta, unit_open, "in [0, 1)");
  out["period"] = r.number("period", p.period, positive, "positive (years)");
  const std::string splitting = r.text("splitting", "R0");
  choose<Splitting>(splitting, r.at("splitting"),
                    {{"R0", Splitting::R0}, {"host", Splitting::HostType}, {"vector", Splitting::VectorType}});
  out["splitting"] = splitting;
  r.finish();
  return out;
}

json matrix_json(const json& v, const std::string& where, std::size_t dim) {
  if (!v.is_array() || v.size() != dim) throw ConfigError(where, "expected a " + std::to_string(dim) + "x" +
                                                                     std::to_string(dim) + " array of rows");
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != dim)
      throw ConfigError(indexed(where, i), "expected a row of " + std::to_string(dim) + " numbers");
    for (std::size_t j = 0; j < dim; ++j)
      if (!row[j].is_number() || !std::isfinite(row[j].get<double>()))
        throw ConfigError(indexed(indexed(where, i), j), "expected a finite number");
  }
  return v;
}

json custom_parameters(const json& raw, const std::string& path) {
  ObjectReader r(raw, path);
  json out;
  const std::size_t dim = ObjectReader::as_count(r.required("dim"), r.at("dim"), 1);
  out["dim"] = dim;
  out["period"] = r.number("period", 1.0, positive, "positive (years)");
  const std::string smooth = r.text("smoothness", "analytic");
  choose<Smoothness>(smooth, r.at("smoothness"),
                     {{"lipschitz", Smoothness::Lipschitz},
                      {"smooth", Smoothness::Smooth},
                      {"analytic", Smoothness::Analytic},
                      {"piecewise-analytic", Smoothness::PiecewiseAnalytic}});
  out["smoothness"] = smooth;
  const json& pieces = r.required("pieces");
  const std::string ppath = r.at("pieces");
  if (!pieces.is_array() || pieces.empty()) throw ConfigError(ppath, "expected a non-empty array of pieces");
  out["pieces"] = json::array();
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    ObjectReader pr(pieces[p], indexed(ppath, p));
    json piece;
    piece["start"] = pr.number("start", 0.0, any_value, "a number");
    piece["end"] = pr.number("end", out["period"].get<double>(), any_value, "a number");
    const json& samples = pr.required("samples");
    if (!samples.is_array() || samples.empty())
      throw ConfigError(pr.at("samples"), "expected a non-empty array of samples");
    piece["samples"] = json::array();
    for (std::size_t k = 0; k < samples.size(); ++k) {
      ObjectReader sr(samples[k], indexed(pr.at("samples"), k));
      json s;
      sr.required("t");
      s["t"] = sr.number("t", 0.0, any_value, "a number");
      s["B"] = matrix_json(sr.required("B"), sr.at("B"), dim);
      s["M"] = matrix_json(sr.required("M"), sr.at("M"), dim);
      sr.finish();
      piece["samples"].push_back(std::move(s));
    }
    pr.finish();
    out["pieces"].push_back(std::move(piece));
  }
  r.finish();
  return out;
}

json family_parameters(Family family, const json& raw, const std::string& path) {
  switch (family) {
    case Family::Sir: return sir_parameters(raw, path);
    case Family::VectorHost: return vector_host_parameters(raw, path);
    case Family::CustomSamples: return custom_parameters(raw, path);
  }
  return json::object();
}

std::vector<std::string> split_path(std::string_view dotted, const std::string& where) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string part(dotted.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (part.empty()) throw ConfigError(where, "malformed path \"" + std::string(dotted) + "\"");
    parts.push_back(part);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

bool is_index(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

Matrix matrix_from(const json& rows, std::size_t dim) {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j].get<double>();
  return m;
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::Sir: return "sir";
    case Family::VectorHost: return "vector-host";
    case Family::CustomSamples: return "custom-samples";
  }
  return "unknown";
}

const char* to_string(Task t) noexcept {
  switch (t) {
    case Task::R0: return "r0";
    case Task::Spectrum: return "spectrum";
    case Task::Eigenfunction: return "eigenfunction";
    case Task::Convergence: return "convergence";
    case Task::Mom: return "mom";
    case Task::Sweep: return "sweep";
    case Task::Averaged: return "averaged";
  }
  return "unknown";
}

const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Full: return "full";
    case Strategy::Power: return "power";
    case Strategy::Auto: return "auto";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  return choose<Task>(std::string(name), "task.kind",
                      {{"r0", Task::R0},
                       {"spectrum", Task::Spectrum},
                       {"eigenfunction", Task::Eigenfunction},
                       {"convergence", Task::Convergence},
                       {"mom", Task::Mom},
                       {"sweep", Task::Sweep},
                       {"averaged", Task::Averaged}});
}

void set_path(json& root, std::string_view dotted, json value, const std::string& where) {
  const auto parts = split_path(dotted, where);
  json* node = &root;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& key = parts[i];
    const bool last = i + 1 == parts.size();
    if (node->is_array() && is_index(key)) {
      const std::size_t idx = std::stoul(key);
      if (idx >= node->size()) throw ConfigError(where, "index " + key + " out of range");
      node = &(*node)[idx];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw ConfigError(where, "cannot descend into a non-object at \"" + key + "\"");
      node = &(*node)[key];
    }
    if (last) *node = std::move(value);
  }
}

void apply_override(json& raw, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  const std::string where = "--override " + std::string(assignment);
  if (eq == std::string_view::npos || eq == 0) throw ConfigError(where, "expected key=value");
  const std::string_view key = assignment.substr(0, eq);
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  set_path(raw, key, std::move(value), where);
}

RunConfig parse_config(const json& raw) {
  ObjectReader top(raw, "");
  RunConfig cfg;

  // model
  {
    ObjectReader m(top.required("model"), "model");
    const std::string family = m.text("family", "");
    if (family.empty()) throw ConfigError(m.at("family"), "required field is missing");
    cfg.family = choose<Family>(family, m.at("family"),
                                {{"sir", Family::Sir}, {"vector-host", Family::VectorHost},
                                 {"custom-samples", Family::CustomSamples}});
    json params = json::object();
    if (const json* p = m.find("parameters")) params = *p;
    if (!params.is_object()) throw ConfigError(m.at("parameters"), "expected an object");
    if (const json* o = m.find("overrides")) {
      if (!o->is_object()) throw ConfigError(m.at("overrides"), "expected an object of dotted keys");
      for (auto it = o->begin(); it != o->end(); ++it) set_path(params, it.key(), it.value(), join(m.at("overrides"), it.key()));
    }
    m.finish();
    cfg.parameters = family_parameters(cfg.family, params, "model.parameters");
  }

  // task
  json task_raw = json::object();
  if (const json* t = top.find("task")) task_raw = *t;
  {
    ObjectReader t(task_raw, "task");
    cfg.task.kind = parse_task(t.text("kind", "r0"));
    const bool convergence = cfg.task.kind == Task::Convergence;
    cfg.task.strategy = choose<Strategy>(t.text("strategy", "full"), t.at("strategy"),
                                         {{"full", Strategy::Full}, {"power", Strategy::Power}, {"auto", Strategy::Auto}});
    cfg.task.selection = choose<DominantSelection>(
        t.text("selection", convergence ? "largest-real" : "real-in-band"), t.at("selection"),
        {{"real-in-band", DominantSelection::RealInBand}, {"largest-real", DominantSelection::LargestReal}});
    cfg.task.grid_points = t.count("grid_points", cfg.task.grid_points, 2);
    cfg.task.reference_degree = t.count("reference_N", cfg.task.reference_degree, 3);
    cfg.task.rtol_ode = t.number("rtol_ode", cfg.task.rtol_ode, positive, "positive");
    cfg.task.tol_root = t.number("tol_root", cfg.task.tol_root, positive, "positive");
    if (cfg.task.kind == Task::Spectrum && cfg.task.strategy != Strategy::Full)
      throw ConfigError(t.at("strategy"), "the spectrum task needs the full strategy");
    if (const json* s = t.find("sweep")) {
      ObjectReader sr(*s, t.at("sweep"));
      cfg.task.sweep_parameter = sr.text("parameter", "");
      const json* values = sr.find("values");
      if (!values || !values->is_array() || values->empty())
        throw ConfigError(sr.at("values"), "expected a non-empty array of numbers");
      for (std::size_t i = 0; i < values->size(); ++i) {
        if (!(*values)[i].is_number()) throw ConfigError(indexed(sr.at("values"), i), "expected a number");
        cfg.task.sweep_values.push_back((*values)[i].get<double>());
      }
      sr.finish();
    }
    if (cfg.task.kind == Task::Sweep) {
      if (cfg.task.sweep_parameter.empty() && cfg.family == Family::VectorHost) cfg.task.sweep_parameter = "delta";
      if (cfg.task.sweep_parameter.empty()) throw ConfigError("task.sweep.parameter", "required for the sweep task");
      if (cfg.task.sweep_values.empty()) throw ConfigError("task.sweep.values", "required for the sweep task");
      // The parameter must exist and be numeric; every value must validate.
      const auto parts = split_path(cfg.task.sweep_parameter, "task.sweep.parameter");
      const json* node = &cfg.parameters;
      for (const auto& part : parts) {
        if (!node->is_object() || !node->contains(part))
          throw ConfigError("task.sweep.parameter", "model has no parameter \"" + cfg.task.sweep_parameter + "\"");
        node = &(*node)[part];
      }
      if (!node->is_number()) throw ConfigError("task.sweep.parameter", "parameter is not numeric");
      for (std::size_t i = 0; i < cfg.task.sweep_values.size(); ++i) {
        json trial = cfg.parameters;
        set_path(trial, cfg.task.sweep_parameter, cfg.task.sweep_values[i], "task.sweep.values");
        try {
          family_parameters(cfg.family, trial, "model.parameters");
        } catch (const ConfigError& e) {
          throw ConfigError(indexed("task.sweep.values", i), std::string("invalid value: ") + e.what());
        }
      }
    }
    t.finish();
  }

  // scheme
  json scheme_raw = json::object();
  if (const json* s = top.find("scheme")) scheme_raw = *s;
  {
    ObjectReader s(scheme_raw, "scheme");
    cfg.scheme.method = choose<Scheme>(s.text("method", "fourier"), s.at("method"),
                                       {{"fourier", Scheme::Fourier},
                                        {"chebyshev", Scheme::Chebyshev},
                                        {"chebyshev-piecewise", Scheme::PiecewiseChebyshev}});
    cfg.scheme.allow_even = s.boolean("allow_even", false);
    const std::size_t minimum = cfg.scheme.method == Scheme::Fourier ? 3 : 2;
    if (const json* n = s.find("N")) {
      if (n->is_array()) {
        if (n->empty()) throw ConfigError(s.at("N"), "expected a non-empty list");
        for (std::size_t i = 0; i < n->size(); ++i)
          cfg.scheme.degrees.push_back(ObjectReader::as_count((*n)[i], indexed(s.at("N"), i), minimum));
      } else {
        cfg.scheme.degrees.push_back(ObjectReader::as_count(*n, s.at("N"), minimum));
      }
    } else {
      cfg.scheme.degrees.push_back(25);
    }
    for (std::size_t i = 1; i < cfg.scheme.degrees.size(); ++i)
      if (cfg.scheme.degrees[i] <= cfg.scheme.degrees[i - 1])
        throw ConfigError(indexed(s.at("N"), i), "N values must be strictly increasing");
    if (cfg.task.kind != Task::Convergence && cfg.scheme.degrees.size() != 1)
      throw ConfigError(s.at("N"), std::string("task ") + to_string(cfg.task.kind) + " takes a single N");
    if (cfg.scheme.method == Scheme::Fourier && !cfg.scheme.allow_even) {
      for (std::size_t i = 0; i < cfg.scheme.degrees.size(); ++i)
        if (cfg.scheme.degrees[i] % 2 == 0)
          throw ConfigError(cfg.scheme.degrees.size() == 1 ? s.at("N") : indexed(s.at("N"), i),
                            "Fourier collocation takes odd N (set scheme.allow_even to override)");
    }
    if (const json* b = s.find("breakpoints")) {
      if (cfg.scheme.method != Scheme::PiecewiseChebyshev)
        throw ConfigError(s.at("breakpoints"), "only chebyshev-piecewise takes breakpoints");
      if (!b->is_array() || b->size() < 2) throw ConfigError(s.at("breakpoints"), "expected at least two times");
      for (std::size_t i = 0; i < b->size(); ++i) {
        if (!(*b)[i].is_number()) throw ConfigError(indexed(s.at("breakpoints"), i), "expected a number");
        cfg.scheme.breakpoints.push_back((*b)[i].get<double>());
        if (i > 0 && !(cfg.scheme.breakpoints[i] > cfg.scheme.breakpoints[i - 1]))
          throw ConfigError(indexed(s.at("breakpoints"), i), "breakpoints must be strictly increasing");
      }
    }
    s.finish();
  }

  // output
  json output_raw = json::object();
  if (const json* o = top.find("output")) output_raw = *o;
  {
    ObjectReader o(output_raw, "output");
    cfg.output.dir = o.text("dir", cfg.output.dir);
    cfg.output.prefix = o.text("prefix", to_string(cfg.task.kind));
    if (cfg.output.prefix.empty() || cfg.output.prefix.find('/') != std::string::npos)
      throw ConfigError(o.at("prefix"), "must be a non-empty file-name prefix");
    cfg.output.timing = o.boolean("timing", false);
    o.finish();
  }
  top.finish();

  // Model-level consistency is checked by building the model once.
  PeriodicModel model;
  try {
    model = build_model(cfg.family, cfg.parameters, cfg.scheme.method);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("model.parameters", e.what());
  }
  if (cfg.scheme.method == Scheme::PiecewiseChebyshev) {
    if (cfg.scheme.breakpoints.empty()) cfg.scheme.breakpoints = model.breakpoints;
    const double tau = model.period;
    if (std::abs(cfg.scheme.breakpoints.front()) > 1e-12 * tau ||
        std::abs(cfg.scheme.breakpoints.back() - tau) > 1e-12 * tau)
      throw ConfigError("scheme.breakpoints", "must start at 0 and end at the model period");
  }
  if (cfg.scheme.method == Scheme::Fourier && model.piece_count() > 1)
    throw ConfigError("scheme.method", "Fourier collocation cannot be used on a model with interior breakpoints");

  json& e = cfg.effective;
  e["model"]["family"] = to_string(cfg.family);
  e["model"]["parameters"] = cfg.parameters;
  e["scheme"]["method"] = cfg.scheme.method == Scheme::Fourier     ? "fourier"
                          : cfg.scheme.method == Scheme::Chebyshev ? "chebyshev"
                                                                   : "chebyshev-piecewise";
  if (cfg.task.kind == Task::Convergence)
    e["scheme"]["N"] = cfg.scheme.degrees;
  else
    e["scheme"]["N"] = cfg.scheme.degrees.front();
  e["scheme"]["allow_even"] = cfg.scheme.allow_even;
  if (!cfg.scheme.breakpoints.empty()) e["scheme"]["breakpoints"] = cfg.scheme.breakpoints;
  e["task"]["kind"] = to_string(cfg.task.kind);
  e["task"]["strategy"] = to_string(cfg.task.strategy);
  e["task"]["selection"] = cfg.task.selection == DominantSelection::RealInBand ? "real-in-band" : "largest-real";
  e["task"]["grid_points"] = cfg.task.grid_points;
  e["task"]["reference_N"] = cfg.task.reference_degree;
  e["task"]["rtol_ode"] = cfg.task.rtol_ode;
  e["task"]["tol_root"] = cfg.task.tol_root;
  if (!cfg.task.sweep_parameter.empty()) {
    e["task"]["sweep"]["parameter"] = cfg.task.sweep_parameter;
    e["task"]["sweep"]["values"] = cfg.task.sweep_values;
  }
  e["output"]["dir"] = cfg.output.dir;
  e["output"]["prefix"] = cfg.output.prefix;
  e["output"]["timing"] = cfg.output.timing;
  return cfg;
}

SirParams sir_params(const json& p) {
  SirParams s;
  s.groups = p.at("groups").get<std::size_t>();
  s.q = p.at("q").get<double>();
  s.gamma = p.at("gamma").get<double>();
  s.mu = p.at("mu").get<double>();
  s.population = p.at("population").get<double>();
  s.period = p.at("period").get<double>();
  const std::string kind = p.at("contact").at("kind").get<std::string>();
  s.contact.kind = kind == "F1" ? ContactRate::Kind::F1 : kind == "F2" ? ContactRate::Kind::F2 : ContactRate::Kind::F3;
  if (s.contact.kind == ContactRate::Kind::F1) {
    s.contact.amplitude = p.at("contact").at("amplitude").get<double>();
    s.contact.phase = p.at("contact").at("phase").get<double>();
  }
  return s;
}

VectorHostParams vector_host_params(const json& p) {
  VectorHostParams v;
  v.biting = p.at("biting").get<double>();
  v.q_host_from_vector = p.at("q_host_from_vector").get<double>();
  v.q_vector_from_host = p.at("q_vector_from_host").get<double>();
  v.nu_host = p.at("nu_host").get<double>();
  v.nu_vector = p.at("nu_vector").get<double>();
  v.omega = p.at("omega").get<double>();
  v.gamma = p.at("gamma").get<double>();
  v.mu = p.at("mu").get<double>();
  v.ratio = p.at("ratio").get<double>();
  v.delta = p.at("delta").get<double>();
  v.period = p.at("period").get<double>();
  const std::string s = p.at("splitting").get<std::string>();
  v.splitting = s == "R0" ? Splitting::R0 : s == "host" ? Splitting::HostType : Splitting::VectorType;
  return v;
}

PeriodicModel build_model(Family family, const json& p, Scheme scheme) {
  switch (family) {
    case Family::Sir: return sir_model(sir_params(p));
    case Family::VectorHost: return vector_host_model(vector_host_params(p));
    case Family::CustomSamples: {
      const std::size_t dim = p.at("dim").get<std::size_t>();
      std::vector<SampledPiece> pieces;
      for (const auto& pj : p.at("pieces")) {
        SampledPiece piece;
        piece.start = pj.at("start").get<double>();
        piece.end = pj.at("end").get<double>();
        for (const auto& sj : pj.at("samples"))
          piece.samples.push_back({sj.at("t").get<double>(), matrix_from(sj.at("B"), dim), matrix_from(sj.at("M"), dim)});
        pieces.push_back(std::move(piece));
      }
      const std::string smooth = p.at("smoothness").get<std::string>();
      const Smoothness sm = smooth == "lipschitz"  ? Smoothness::Lipschitz
                            : smooth == "smooth"   ? Smoothness::Smooth
                            : smooth == "analytic" ? Smoothness::Analytic
                                                   : Smoothness::PiecewiseAnalytic;
      return sampled_model(dim, p.at("period").get<double>(), pieces, scheme, sm);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model family");
}

}  // namespace r0col::cli
