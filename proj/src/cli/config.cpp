#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "polariton/errors.hpp"

namespace polariton::cli {

const char* to_string(Verb v) {
  switch (v) {
    case Verb::spectrum: return "spectrum";
    case Verb::witness: return "witness";
    case Verb::dynamics: return "dynamics";
    case Verb::classical: return "classical";
    case Verb::verify: return "verify";
  }
  return "?";
}

const char* to_string(ModelChoice m) {
  switch (m) {
    case ModelChoice::dicke: return "dicke";
    case ModelChoice::bilinear: return "bilinear";
    case ModelChoice::jc_rwa: return "jc-rwa";
    case ModelChoice::classical: return "classical";
    case ModelChoice::semiclassical: return "semiclassical";
  }
  return "?";
}

const char* to_string(DynamicsMode m) {
  switch (m) {
    case DynamicsMode::rabi_flop: return "rabi-flop";
    case DynamicsMode::semiclassical: return "semiclassical";
    case DynamicsMode::vacuum_correlation: return "vacuum-correlation";
  }
  return "?";
}

DynamicsMode parse_mode(const std::string& s) {
  if (s == "rabi-flop") return DynamicsMode::rabi_flop;
  if (s == "semiclassical") return DynamicsMode::semiclassical;
  if (s == "vacuum-correlation") return DynamicsMode::vacuum_correlation;
  throw ConfigError("unknown dynamics mode '" + s + "'");
}

ModelKind quantum_kind(ModelChoice m) {
  switch (m) {
    case ModelChoice::dicke: return ModelKind::dicke;
    case ModelChoice::bilinear: return ModelKind::bilinear;
    case ModelChoice::jc_rwa: return ModelKind::jc_rwa;
    default: break;
  }
  throw ConfigError(std::string("model '") + to_string(m) + "' has no quantum Hamiltonian");
}

namespace {

ModelChoice parse_model(const std::string& s) {
  for (auto m : {ModelChoice::dicke, ModelChoice::bilinear, ModelChoice::jc_rwa,
                 ModelChoice::classical, ModelChoice::semiclassical})
    if (s == to_string(m)) return m;
  throw ConfigError("unknown model '" + s + "' (dicke|bilinear|jc-rwa|classical|semiclassical)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw ConfigError(what + ": '" + s + "' is not a number");
  return v;
}

json parse_scalar(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

void set_path(json& doc, const std::string& path, json value) {
  json* node = &doc;
  const auto parts = split(path, '.');
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw ConfigError("malformed parameter path '" + path + "'");
    if (node->is_null()) *node = json::object();
    if (!node->is_object()) throw ConfigError("'" + path + "' does not address an object member");
    if (i + 1 == parts.size())
      (*node)[parts[i]] = std::move(value);
    else
      node = &(*node)[parts[i]];
  }
}

const json* find_path(const json& doc, const std::string& path) {
  const json* node = &doc;
  for (const auto& part : split(path, '.')) {
    if (!node->is_object() || !node->contains(part)) return nullptr;
    node = &(*node)[part];
  }
  return node;
}

void check_keys(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("'" + section + "' must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
}

double number(const json& obj, const std::string& section, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing '" + section + "." + key + "'");
  const auto& v = obj[key];
  if (!v.is_number()) throw ConfigError("'" + section + "." + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + section + "." + key + "' must be finite");
  return x;
}

int integer(const json& obj, const std::string& section, const std::string& key) {
  const double x = number(obj, section, key);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw ConfigError("'" + section + "." + key + "' must be an integer");
  return static_cast<int>(x);
}

std::complex<double> complex_value(const json& obj, const std::string& section,
                                   const std::string& key) {
  const auto& v = obj[key];
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("'" + section + "." + key + "' must be a number or [re, im]");
}

void default_to(json& obj, const std::string& key, json value) {
  if (!obj.contains(key)) obj[key] = std::move(value);
}

void exclusive(const json& obj, const std::string& section, const std::string& a,
               const std::string& b) {
  if (obj.contains(a) && obj.contains(b))
    throw ConfigError("'" + section + "' takes either '" + a + "' or '" + b + "', not both");
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"params", {"omega_a", "omega_b", "g", "lambda", "n_atoms"}},
      {"hilbert", {"photon_cutoff", "matter_dim"}},
      {"spectrum", {"levels"}},
      {"time", {"dt", "steps"}},
      {"dynamics", {"window", "output_stride", "a0", "b0"}},
      {"cavity",
       {"wavelength", "length", "order", "finesse", "mirror_r", "n_background", "area", "n_dipoles",
        "dipole_moment", "coupling_fraction", "gamma", "gamma_fraction"}},
      {"grid", {"start_ratio", "stop_ratio", "points"}},
      {"verify", {"tolerances", "classical_n", "jc_n", "hp_max_two_j"}},
      {"output", {"dir", "formats"}},
      {"sweep", {"name", "values"}},
  };
  return s;
}

ModelChoice default_model(Verb verb, DynamicsMode mode) {
  switch (verb) {
    case Verb::classical: return ModelChoice::classical;
    case Verb::dynamics:
      return mode == DynamicsMode::semiclassical ? ModelChoice::semiclassical : ModelChoice::bilinear;
    default: return ModelChoice::bilinear;
  }
}

void check_model(Verb verb, DynamicsMode mode, ModelChoice model) {
  bool ok = false;
  std::string allowed;
  switch (verb) {
    case Verb::spectrum:
      ok = model != ModelChoice::semiclassical;
      allowed = "dicke|bilinear|jc-rwa|classical";
      break;
    case Verb::witness:
      ok = model == ModelChoice::bilinear;
      allowed = "bilinear";
      break;
    case Verb::classical:
      ok = model == ModelChoice::classical;
      allowed = "classical";
      break;
    case Verb::verify:
      ok = true;
      break;
    case Verb::dynamics:
      if (mode == DynamicsMode::rabi_flop) {
        ok = model == ModelChoice::dicke || model == ModelChoice::bilinear ||
             model == ModelChoice::jc_rwa;
        allowed = "dicke|bilinear|jc-rwa";
      } else if (mode == DynamicsMode::semiclassical) {
        ok = model == ModelChoice::semiclassical;
        allowed = "semiclassical";
      } else {
        ok = model == ModelChoice::bilinear;
        allowed = "bilinear";
      }
      break;
  }
  if (!ok) {
    std::string where = to_string(verb);
    if (verb == Verb::dynamics) where += std::string(" ") + to_string(mode);
    throw ConfigError("'" + where + "' does not accept model '" + to_string(model) +
                      "' (expected " + allowed + ")");
  }
}

std::set<std::string> relevant_sections(Verb verb, ModelChoice model) {
  std::set<std::string> s = {"output", "sweep"};
  if (verb == Verb::verify) {
    s.insert("verify");
    return s;
  }
  if (model == ModelChoice::classical) {
    s.insert({"cavity", "grid"});
    return s;
  }
  s.insert("params");
  if (model != ModelChoice::semiclassical) s.insert("hilbert");
  if (verb == Verb::spectrum) s.insert("spectrum");
  if (verb == Verb::dynamics) s.insert({"time", "dynamics"});
  return s;
}

void fill_defaults(json& doc, Verb verb, DynamicsMode mode, ModelChoice model) {
  auto section = [&](const char* name) -> json& {
    if (!doc.contains(name)) doc[name] = json::object();
    return doc[name];
  };

  const auto used = relevant_sections(verb, model);
  for (const auto& name : used) {
    if (name == "output" || name == "sweep") continue;
    json& s = section(name.c_str());
    check_keys(s, name, schema().at(name));
  }

  if (used.count("params")) {
    json& p = doc["params"];
    exclusive(p, "params", "g", "lambda");
    default_to(p, "omega_a", 1.0);
    default_to(p, "omega_b", 1.0);
    default_to(p, "n_atoms", 1);
    if (!p.contains("g")) default_to(p, "lambda", 0.2);
  }
  if (used.count("hilbert")) {
    json& h = doc["hilbert"];
    int cutoff = 16;
    if (model == ModelChoice::jc_rwa) cutoff = 4;
    else if (verb == Verb::dynamics && mode == DynamicsMode::rabi_flop) cutoff = 8;
    default_to(h, "photon_cutoff", cutoff);
    default_to(h, "matter_dim", "auto");
  }
  if (used.count("spectrum")) default_to(doc["spectrum"], "levels", 10);
  if (used.count("time")) {
    json& t = doc["time"];
    switch (mode) {
      case DynamicsMode::rabi_flop:
        default_to(t, "dt", 0.02);
        default_to(t, "steps", 8192);
        break;
      case DynamicsMode::semiclassical:
        default_to(t, "dt", 0.01);
        default_to(t, "steps", 100000);
        break;
      case DynamicsMode::vacuum_correlation:
        default_to(t, "dt", 0.25);
        default_to(t, "steps", 2048);
        break;
    }
  }
  if (used.count("dynamics")) {
    json& d = doc["dynamics"];
    default_to(d, "window", mode == DynamicsMode::vacuum_correlation ? "hann" : "none");
    default_to(d, "output_stride", mode == DynamicsMode::semiclassical ? 10 : 1);
    if (mode == DynamicsMode::semiclassical) {
      default_to(d, "a0", json::array({0.0, 0.0}));
      default_to(d, "b0", json::array({0.0, 0.0}));
    } else if (d.contains("a0") || d.contains("b0")) {
      throw ConfigError("'dynamics.a0' / 'dynamics.b0' only apply to semiclassical runs");
    }
  }
  if (used.count("cavity")) {
    json& c = doc["cavity"];
    exclusive(c, "cavity", "finesse", "mirror_r");
    exclusive(c, "cavity", "dipole_moment", "coupling_fraction");
    exclusive(c, "cavity", "gamma", "gamma_fraction");
    default_to(c, "wavelength", 750e-9);
    default_to(c, "order", 1);
    default_to(c, "n_background", 1.0);
    default_to(c, "area", 1e-12);
    default_to(c, "n_dipoles", 16);
    if (!c.contains("mirror_r")) default_to(c, "finesse", 200.0);
    if (!c.contains("dipole_moment")) default_to(c, "coupling_fraction", 0.02);
    if (!c.contains("gamma")) default_to(c, "gamma_fraction", 1e-3);
  }
  if (used.count("grid")) {
    json& g = doc["grid"];
    default_to(g, "start_ratio", 0.95);
    default_to(g, "stop_ratio", 1.05);
    default_to(g, "points", 20001);
  }
  if (used.count("verify")) {
    json& v = doc["verify"];
    default_to(v, "tolerances", json::object());
    json& t = v["tolerances"];
    check_keys(t, "verify.tolerances",
               {"hp_exactness", "commutator", "cutoff_delta", "mode_gap", "route_agreement",
                "small_lambda_ratio", "agreement_deviation", "sqrt_n_slope"});
    default_to(t, "hp_exactness", 1e-12);
    default_to(t, "commutator", 1e-12);
    default_to(t, "cutoff_delta", 1e-10);
    default_to(t, "mode_gap", 1e-6);
    default_to(t, "route_agreement", 1e-6);
    default_to(t, "small_lambda_ratio", 0.05);
    default_to(t, "agreement_deviation", 0.05);
    default_to(t, "sqrt_n_slope", 0.02);
    default_to(v, "classical_n", json::array({4, 8, 16, 32, 64, 128, 256}));
    default_to(v, "jc_n", json::array({1, 2, 4, 8, 16, 32, 64}));
    default_to(v, "hp_max_two_j", 100);
  }
}

std::vector<Format> parse_formats(const json& value) {
  std::vector<std::string> names;
  if (value.is_string()) {
    names = split(value.get<std::string>(), ',');
  } else if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_string()) throw ConfigError("'output.formats' entries must be strings");
      names.push_back(v.get<std::string>());
    }
  } else {
    throw ConfigError("'output.formats' must be a string or an array");
  }
  std::set<Format> chosen;
  for (const auto& n : names) {
    if (n == "csv") chosen.insert(Format::csv);
    else if (n == "json") chosen.insert(Format::json);
    else if (n == "svg") chosen.insert(Format::svg);
    else throw ConfigError("unknown output format '" + n + "' (csv|json|svg)");
  }
  if (chosen.empty()) throw ConfigError("no output format selected");
  return {chosen.begin(), chosen.end()};
}

Sweep parse_sweep_flag(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--sweep expects NAME=v1,v2,... (got '" + text + "')");
  Sweep s;
  s.path = text.substr(0, eq);
  for (const auto& item : split(text.substr(eq + 1), ','))
    s.values.push_back(parse_double(item, "--sweep " + s.path));
  return s;
}

Sweep parse_sweep_block(const json& block) {
  check_keys(block, "sweep", schema().at("sweep"));
  if (!block.contains("name") || !block["name"].is_string())
    throw ConfigError("'sweep.name' must be a string");
  if (!block.contains("values") || !block["values"].is_array())
    throw ConfigError("'sweep.values' must be an array");
  Sweep s;
  s.path = block["name"].get<std::string>();
  for (const auto& v : block["values"]) {
    if (!v.is_number()) throw ConfigError("'sweep.values' must hold numbers");
    s.values.push_back(v.get<double>());
  }
  return s;
}

// Expands a bare key to section.key and checks that it addresses a numeric parameter.
std::string resolve_sweep_path(const json& doc, const std::string& name,
                               const std::set<std::string>& sections) {
  if (name.find('.') != std::string::npos) {
    const auto head = name.substr(0, name.find('.'));
    if (!sections.count(head) || head == "output" || head == "sweep")
      throw ConfigError("sweep parameter '" + name + "' is not used by this run");
    const json* v = find_path(doc, name);
    if (!v) throw ConfigError("sweep parameter '" + name + "' does not exist");
    if (!v->is_number() && !(name == "hilbert.matter_dim"))
      throw ConfigError("sweep parameter '" + name + "' is not numeric");
    return name;
  }
  std::vector<std::string> hits;
  for (const auto& s : sections) {
    if (s == "output" || s == "sweep" || s == "verify") continue;
    if (doc.contains(s) && doc[s].is_object() && doc[s].contains(name)) hits.push_back(s + "." + name);
  }
  if (hits.empty()) throw ConfigError("sweep parameter '" + name + "' does not exist");
  if (hits.size() > 1) throw ConfigError("sweep parameter '" + name + "' is ambiguous");
  return resolve_sweep_path(doc, hits.front(), sections);
}

}  // namespace

Job make_job(Verb verb, std::optional<DynamicsMode> mode_flag, const Overrides& ov) {
  json doc = json::object();
  if (ov.config_path) {
    std::ifstream in(*ov.config_path);
    if (!in) throw ConfigError("cannot read config file '" + *ov.config_path + "'");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + *ov.config_path + "': " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  }
  for (const auto& s : ov.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects PATH=VALUE (got '" + s + "')");
    set_path(doc, s.substr(0, eq), parse_scalar(s.substr(eq + 1)));
  }
  if (ov.model) doc["model"] = *ov.model;
  if (ov.seed) doc["seed"] = *ov.seed;

  std::set<std::string> top = {"model", "seed"};
  for (const auto& [k, v] : schema()) top.insert(k);
  check_keys(doc, "config", top);

  Job job;
  job.verb = verb;
  job.mode = mode_flag.value_or(DynamicsMode::rabi_flop);
  if (verb == Verb::dynamics && !mode_flag && doc.contains("model") && doc["model"] == "semiclassical")
    job.mode = DynamicsMode::semiclassical;

  if (doc.contains("model")) {
    if (!doc["model"].is_string()) throw ConfigError("'model' must be a string");
    if (verb == Verb::verify) throw ConfigError("'verify' runs a fixed suite and takes no model");
    job.model = parse_model(doc["model"].get<std::string>());
  } else {
    job.model = default_model(verb, job.mode);
  }
  check_model(verb, job.mode, job.model);
  if (verb != Verb::verify) doc["model"] = to_string(job.model);

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0)
      throw ConfigError("'seed' must be a non-negative integer");
  } else {
    doc["seed"] = 20160501;
  }
  job.seed = doc["seed"].get<std::uint64_t>();

  const auto sections = relevant_sections(verb, job.model);
  for (const auto& [name, keys] : schema())
    if (doc.contains(name) && !sections.count(name))
      throw ConfigError("section '" + name + "' is not used by '" + to_string(verb) + "' with model '" +
                        to_string(job.model) + "'");
  fill_defaults(doc, verb, job.mode, job.model);

  json output = doc.contains("output") ? doc["output"] : json::object();
  check_keys(output, "output", schema().at("output"));
  if (ov.out_dir) output["dir"] = *ov.out_dir;
  if (ov.formats) output["formats"] = *ov.formats;
  default_to(output, "dir", "out");
  default_to(output, "formats", verb == Verb::verify ? json("json") : json("csv,json"));
  if (!output["dir"].is_string()) throw ConfigError("'output.dir' must be a string");
  job.out_dir = output["dir"].get<std::string>();
  job.formats = parse_formats(output["formats"]);
  doc.erase("output");

  if (ov.sweep) job.sweep = parse_sweep_flag(*ov.sweep);
  else if (doc.contains("sweep")) job.sweep = parse_sweep_block(doc["sweep"]);
  doc.erase("sweep");
  if (job.sweep) {
    if (verb == Verb::verify) throw ConfigError("'verify' does not take a sweep");
    if (job.sweep->values.empty()) throw ConfigError("sweep needs at least one value");
    job.sweep->path = resolve_sweep_path(doc, job.sweep->path, sections);
  }

  job.document = std::move(doc);
  return job;
}

json point_document(const Job& job, std::optional<double> sweep_value) {
  json doc = job.document;
  if (job.sweep && sweep_value) set_path(doc, job.sweep->path, *sweep_value);
  return doc;
}

RunConfig resolve(const Job& job, const json& doc) {
  RunConfig rc;
  rc.verb = job.verb;
  rc.mode = job.mode;
  rc.model = job.model;
  rc.seed = job.seed;

  if (doc.contains("params")) {
    const json& p = doc["params"];
    const double wa = number(p, "params", "omega_a");
    const double wb = number(p, "params", "omega_b");
    const int n = integer(p, "params", "n_atoms");
    if (n < 1) throw ConfigError("'params.n_atoms' must be >= 1");
    rc.params = p.contains("g") ? ModelParams(wa, wb, number(p, "params", "g"), n)
                                : ModelParams::from_collective(wa, wb, number(p, "params", "lambda"), n);
  }
  if (doc.contains("hilbert")) {
    const json& h = doc["hilbert"];
    const int cutoff = integer(h, "hilbert", "photon_cutoff");
    int matter = 0;
    if (h["matter_dim"].is_string()) {
      if (h["matter_dim"] != "auto") throw ConfigError("'hilbert.matter_dim' must be an integer or \"auto\"");
      matter = rc.model == ModelChoice::bilinear ? cutoff + 1 : rc.params->n_atoms() + 1;
    } else {
      matter = integer(h, "hilbert", "matter_dim");
    }
    rc.hilbert = HilbertSpec(cutoff, matter);
  }
  if (doc.contains("spectrum")) {
    rc.levels = integer(doc["spectrum"], "spectrum", "levels");
    if (rc.levels < 1) throw ConfigError("'spectrum.levels' must be >= 1");
  }
  if (doc.contains("time")) {
    const json& t = doc["time"];
    rc.time = TimeGrid(number(t, "time", "dt"), integer(t, "time", "steps"));
  }
  if (doc.contains("dynamics")) {
    const json& d = doc["dynamics"];
    if (!d["window"].is_string()) throw ConfigError("'dynamics.window' must be a string");
    const auto w = d["window"].get<std::string>();
    if (w == "none") rc.window = Window::none;
    else if (w == "hann") rc.window = Window::hann;
    else throw ConfigError("'dynamics.window' must be none or hann");
    rc.output_stride = integer(d, "dynamics", "output_stride");
    if (rc.output_stride < 1) throw ConfigError("'dynamics.output_stride' must be >= 1");
    if (d.contains("a0")) rc.a0 = complex_value(d, "dynamics", "a0");
    if (d.contains("b0")) rc.b0 = complex_value(d, "dynamics", "b0");
  }
  if (doc.contains("cavity")) {
    const json& c = doc["cavity"];
    const double wavelength = number(c, "cavity", "wavelength");
    if (!(wavelength > 0.0)) throw ConfigError("'cavity.wavelength' must be positive");
    CavityParams cav{};
    cav.omega_b = 2.0 * std::numbers::pi * si::speed_of_light / wavelength;
    cav.n_background = number(c, "cavity", "n_background");
    cav.area = number(c, "cavity", "area");
    cav.n_dipoles = number(c, "cavity", "n_dipoles");
    cav.length = c.contains("length")
                     ? number(c, "cavity", "length")
                     : tuned_length(cav.omega_b, cav.n_background, integer(c, "cavity", "order"));
    cav.mirror_r = c.contains("mirror_r") ? number(c, "cavity", "mirror_r")
                                          : mirror_r_for_finesse(number(c, "cavity", "finesse"));
    cav.gamma = c.contains("gamma") ? number(c, "cavity", "gamma")
                                    : number(c, "cavity", "gamma_fraction") * cav.omega_b;
    if (c.contains("dipole_moment")) {
      cav.dipole_moment = number(c, "cavity", "dipole_moment");
    } else {
      const double frac = number(c, "cavity", "coupling_fraction");
      if (!(frac >= 0.0) || !(cav.n_dipoles > 0.0) || !(cav.area > 0.0) || !(cav.length > 0.0))
        throw ConfigError("'cavity.coupling_fraction' needs non-negative value and positive geometry");
      cav.dipole_moment = frac * cav.omega_b *
                          std::sqrt(cav.hbar * cav.eps0 * cav.mode_volume() / (cav.n_dipoles * cav.omega_b));
    }
    cav.validate();
    rc.cavity = cav;
    const json& g = doc["grid"];
    rc.grid = FrequencyGrid(number(g, "grid", "start_ratio") * cav.omega_b,
                            number(g, "grid", "stop_ratio") * cav.omega_b, integer(g, "grid", "points"));
  }
  if (doc.contains("verify")) rc.verify = doc["verify"];
  return rc;
}

}  // namespace polariton::cli
