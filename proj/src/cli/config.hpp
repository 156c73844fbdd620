#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polariton/classical_cavity.hpp"
#include "polariton/dynamics.hpp"
#include "polariton/model.hpp"

namespace polariton::cli {

using json = nlohmann::ordered_json;

enum class Verb { spectrum, witness, dynamics, classical, verify };
enum class ModelChoice { dicke, bilinear, jc_rwa, classical, semiclassical };
enum class DynamicsMode { rabi_flop, semiclassical, vacuum_correlation };
enum class Format { csv, json, svg };

const char* to_string(Verb v);
const char* to_string(ModelChoice m);
const char* to_string(DynamicsMode m);
DynamicsMode parse_mode(const std::string& s);

// Values collected from the command line; each one overrides the config file.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> formats;
  std::optional<std::int64_t> seed;
  std::optional<std::string> sweep;
  std::optional<std::string> model;
  std::vector<std::string> sets;  // dotted.path=value
};

struct Sweep {
  std::string path;  // dotted path into the document
  std::vector<double> values;
};

// A whole run: the effective document (defaults filled in) plus the sweep axis.
struct Job {
  Verb verb;
  DynamicsMode mode = DynamicsMode::rabi_flop;
  ModelChoice model;
  json document;
  std::optional<Sweep> sweep;
  std::filesystem::path out_dir;
  std::vector<Format> formats;
  std::uint64_t seed;
};

Job make_job(Verb verb, std::optional<DynamicsMode> mode, const Overrides& overrides);

// Parameters for a single sweep point.
struct RunConfig {
  Verb verb;
  DynamicsMode mode;
  ModelChoice model;
  std::uint64_t seed;
  std::optional<ModelParams> params;
  std::optional<HilbertSpec> hilbert;
  std::optional<CavityParams> cavity;
  std::optional<FrequencyGrid> grid;
  std::optional<TimeGrid> time;
  Window window = Window::none;
  int output_stride = 1;
  std::complex<double> a0, b0;
  int levels = 10;
  json verify;  // tolerances and sweep sizes for cmd_verify
};

json point_document(const Job& job, std::optional<double> sweep_value);
RunConfig resolve(const Job& job, const json& document);

ModelKind quantum_kind(ModelChoice m);

}  // namespace polariton::cli
