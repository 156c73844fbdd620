#include "polariton/cli/app.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "polariton/errors.hpp"
#include "pool.hpp"

namespace polariton::cli {

namespace {

struct Parsed {
  Verb verb;
  std::optional<DynamicsMode> mode;
  Overrides overrides;
};

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--out", ov.out_dir, "output directory (default: out)");
  cmd->add_option("--format", ov.formats, "comma list of csv, json, svg");
  cmd->add_option("--seed", ov.seed, "seed for randomized start vectors");
  cmd->add_option("--sweep", ov.sweep, "NAME=v1,v2,... runs one point per value");
  cmd->add_option("--model", ov.model, "dicke|bilinear|jc-rwa|classical|semiclassical");
  cmd->add_option("--set", ov.sets, "override a config value: section.key=value")->take_all();
}

class Writer {
 public:
  explicit Writer(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    written_.push_back(path.string());
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> written_;
};

bool wants(const Job& job, Format f) {
  return std::find(job.formats.begin(), job.formats.end(), f) != job.formats.end();
}

std::string sweep_unit(const std::string& path) {
  static const std::map<std::string, std::string> units = {
      {"params.omega_a", "omega_a"},   {"params.omega_b", "omega_a"},  {"params.g", "omega_a"},
      {"params.lambda", "omega_a"},    {"params.n_atoms", "1"},        {"hilbert.photon_cutoff", "1"},
      {"hilbert.matter_dim", "1"},     {"spectrum.levels", "1"},       {"time.dt", "1/omega_a"},
      {"time.steps", "1"},             {"dynamics.output_stride", "1"}, {"cavity.wavelength", "m"},
      {"cavity.length", "m"},          {"cavity.area", "m^2"},         {"cavity.gamma", "rad/s"},
      {"cavity.dipole_moment", "C m"}, {"grid.start_ratio", "omega/omega_b"},
      {"grid.stop_ratio", "omega/omega_b"}};
  const auto it = units.find(path);
  return it == units.end() ? "1" : it->second;
}

std::string scalar_slug(const std::string& column) {
  return column.substr(0, column.find(' '));
}

void emit_point(Writer& w, const Job& job, const PointResult& r, const std::string& suffix,
                std::optional<double> sweep_value) {
  const auto stem = run_stem(job);
  if (wants(job, Format::csv))
    for (const auto& t : r.tables) w.write(t.stem + suffix + ".csv", to_csv(t));
  if (wants(job, Format::json)) {
    json doc = r.summary;
    if (sweep_value) doc["sweep"] = {{"name", job.sweep->path}, {"value", number(*sweep_value)}};
    w.write(stem + suffix + ".json", to_json_text(doc));
  }
  if (wants(job, Format::svg))
    for (const auto& p : r.plots) w.write(p.stem + suffix + ".svg", to_svg(p));
}

void emit_summary(Writer& w, const Job& job, const std::vector<PointResult>& results) {
  const auto stem = run_stem(job);
  const auto& sweep = *job.sweep;
  Table t{stem + "_summary", {sweep.path + " [" + sweep_unit(sweep.path) + "]"}, {}};
  for (const auto& [name, v] : results.front().scalars) t.header.push_back(name);
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<double> row = {sweep.values[i]};
    for (const auto& [name, v] : results[i].scalars) row.push_back(v);
    t.rows.push_back(std::move(row));
  }
  if (wants(job, Format::csv)) w.write(t.stem + ".csv", to_csv(t));
  if (wants(job, Format::json)) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[t.header[c]] = number(row[c]);
      rows.push_back(obj);
    }
    json doc = {{"verb", to_string(job.verb)}, {"sweep", sweep.path}, {"points", rows}};
    w.write(t.stem + ".json", to_json_text(doc));
  }
  if (wants(job, Format::svg)) {
    for (std::size_t c = 1; c < t.header.size(); ++c) {
      Plot p{t.stem + "_" + scalar_slug(t.header[c]), t.header[c] + " vs " + sweep.path, t.header[0],
             t.header[c], sweep.values, {}};
      for (const auto& row : t.rows) p.y.push_back(row[c]);
      w.write(p.stem + ".svg", to_svg(p));
    }
  }
}

int execute(const Job& job, std::ostream& out) {
  if (job.verb == Verb::verify && (wants(job, Format::csv) || wants(job, Format::svg)))
    throw ConfigError("'verify' writes a JSON report only (--format json)");
  if (wants(job, Format::svg) && !draws_plots(job) && !job.sweep)
    throw ConfigError(std::string("'") + to_string(job.verb) + "' only draws SVG plots across a --sweep");

  const int threads = worker_limit();
  Writer writer(job.out_dir);
  int code = kOk;

  if (job.verb == Verb::verify) {
    const auto r = run_verify(resolve(job, job.document), threads);
    writer.write("verify.json", to_json_text(r.summary));
    if (r.verification_failed) code = kVerificationFailed;
  } else {
    const std::size_t n = job.sweep ? job.sweep->values.size() : 1;
    auto value_at = [&](std::size_t i) -> std::optional<double> {
      if (!job.sweep) return std::nullopt;
      return job.sweep->values[i];
    };
    const auto results = parallel_map<PointResult>(n, threads, [&](std::size_t i) {
      return compute_point(resolve(job, point_document(job, value_at(i))));
    });
    // Single collector: files are written here, in sweep order, by one thread.
    for (std::size_t i = 0; i < n; ++i) {
      std::string suffix;
      if (job.sweep) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "_p%03zu", i);
        suffix = buf;
      }
      emit_point(writer, job, results[i], suffix, value_at(i));
    }
    if (job.sweep) emit_summary(writer, job, results);
  }
  for (const auto& path : writer.written()) out << path << '\n';
  return code;
}

void refuse(const Job& job, const std::string& reason) {
  if (!wants(job, Format::json)) return;
  json doc = {{"verb", to_string(job.verb)}, {"status", "refused"}, {"reason", reason}};
  try {
    Writer(job.out_dir).write(run_stem(job) + ".json", to_json_text(doc));
  } catch (const std::exception&) {
    // the error message on stderr still carries the reason
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Light-matter polariton toolkit: spectra, entanglement witness, dynamics, classical cavity"};
  app.require_subcommand(1);
  Parsed parsed{};
  std::string mode_name;

  struct VerbEntry {
    Verb verb;
    const char* help;
    Overrides ov;
    CLI::App* cmd = nullptr;
  };
  std::vector<VerbEntry> verbs = {
      {Verb::spectrum, "eigenvalue tables or classical transmission spectra", {}},
      {Verb::witness, "energy entanglement witness and linear entropies", {}},
      {Verb::dynamics, "trajectories and spectra: rabi-flop | semiclassical | vacuum-correlation", {}},
      {Verb::classical, "Fabry-Perot transmission and classical/quantum splitting agreement", {}},
      {Verb::verify, "run the invariant suite and write a pass/fail report", {}}};
  for (auto& v : verbs) {
    v.cmd = app.add_subcommand(to_string(v.verb), v.help);
    add_common(v.cmd, v.ov);
    if (v.verb == Verb::dynamics)
      v.cmd->add_option("mode", mode_name, "rabi-flop | semiclassical | vacuum-correlation")
          ->check(CLI::IsMember({"rabi-flop", "semiclassical", "vacuum-correlation"}));
  }

  std::vector<const char*> argv = {"polariton"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kConfigError;
  }
  for (auto& v : verbs)
    if (v.cmd->parsed()) {
      parsed.verb = v.verb;
      parsed.overrides = v.ov;
    }
  if (!mode_name.empty()) parsed.mode = parse_mode(mode_name);

  std::optional<Job> job;
  try {
    job = make_job(parsed.verb, parsed.mode, parsed.overrides);
    return execute(*job, out);
  } catch (const DomainError& e) {
    if (job) refuse(*job, e.what());
    err << "refused: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << " (residual " << fmt(e.residual()) << ")\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace polariton::cli
