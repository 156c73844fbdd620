#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "output.hpp"
#include "polariton/cli/app.hpp"
#include "polariton/spectral.hpp"

namespace fs = std::filesystem;
using polariton::cli::json;
using polariton::cli::run;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("polariton_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string str() const { return dir.string(); }
};

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("number formatting uses 12 significant digits") {
  using polariton::cli::fmt;
  CHECK(fmt(0.1 + 0.2) == "0.3");
  CHECK(fmt(-0.0) == "0");
  CHECK(fmt(1.0 / 3.0) == "0.333333333333");
  CHECK(fmt(2.5115354230796e15) == "2.51153542308e+15");
  CHECK(polariton::cli::number(std::nan("")).is_null());
  CHECK(polariton::cli::number(1.0 / 3.0).get<double>() == 0.333333333333);
}

TEST_CASE("svg renderer emits a self-contained line chart") {
  polariton::cli::Plot p{"x", "a <title>", "t", "y", {0, 1, 2, 3}, {0, 1, 4, 9}};
  const auto svg = polariton::cli::to_svg(p);
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("a &lt;title&gt;") != std::string::npos);
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
  // flat data still renders
  polariton::cli::Plot flat{"x", "flat", "t", "y", {0, 1, 2}, {0, 0, 0}};
  CHECK(polariton::cli::to_svg(flat).find("<polyline") != std::string::npos);
}

TEST_CASE("spectrum: bilinear eigenvalue table") {
  Scratch s("spectrum");
  const auto r = invoke({"spectrum", "--out", s.str(), "--format", "csv,json,svg"});
  REQUIRE(r.code == 0);
  const auto rows = csv(s.dir / "spectrum_levels.csv");
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == std::vector<std::string>{"level [1]", "energy [omega_a]", "excitation [omega_a]"});
  const auto modes = polariton::normal_modes(polariton::ModelParams::from_collective(1, 1, 0.2));
  CHECK(std::stod(rows[2][2]) == doctest::Approx(modes.omega_minus).epsilon(1e-10));
  CHECK(std::stod(rows[3][2]) == doctest::Approx(modes.omega_plus).epsilon(1e-10));
  CHECK(std::stod(rows[1][1]) == doctest::Approx(-0.021093687069296707).epsilon(1e-10));
  CHECK(fs::exists(s.dir / "spectrum_levels.svg"));
  const auto j = load(s.dir / "spectrum.json");
  CHECK(j["levels"].size() == 10);
  CHECK(j["model"] == "bilinear");
}

TEST_CASE("spectrum: classical cavity without dipoles has one Airy peak") {
  Scratch s("airy");
  const auto r = invoke({"spectrum", "--model", "classical", "--set", "cavity.coupling_fraction=0", "--out",
                         s.str(), "--format", "csv,json"});
  REQUIRE(r.code == 0);
  const auto j = load(s.dir / "spectrum.json");
  CHECK(j["peaks"]["status"] == "no-splitting");
  CHECK(j["peaks"]["frequencies"].size() == 1);
  const auto rows = csv(s.dir / "spectrum_transmission.csv");
  CHECK(rows[0][0] == "omega [rad/s]");
  CHECK(rows.size() == 20002);
  double peak = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) peak = std::max(peak, std::stod(rows[i][2]));
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("spectrum: sweep writes one file set per point plus a summary") {
  Scratch s("sweep");
  const auto r = invoke({"spectrum", "--sweep", "lambda=0.05,0.1,0.2", "--out", s.str()});
  REQUIRE(r.code == 0);
  for (const char* f : {"spectrum_levels_p000.csv", "spectrum_levels_p002.csv", "spectrum_p001.json",
                        "spectrum_summary.csv", "spectrum_summary.json"})
    CHECK(fs::exists(s.dir / f));
  const auto rows = csv(s.dir / "spectrum_summary.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "params.lambda [omega_a]");
  for (int i = 1; i <= 3; ++i) {
    const double lambda = std::stod(rows[i][0]);
    const auto p = polariton::ModelParams::from_collective(1, 1, lambda);
    CHECK(std::stod(rows[i][1]) == doctest::Approx(polariton::ground_energy_bilinear(p)).epsilon(1e-10));
    CHECK(std::stod(rows[i][2]) == doctest::Approx(polariton::normal_modes(p).omega_minus).epsilon(1e-10));
  }
  CHECK(load(s.dir / "spectrum_p002.json")["sweep"]["value"] == 0.2);
}

TEST_CASE("sweeps are independent of the worker count") {
  Scratch a("threads_a"), b("threads_b");
  ::setenv("POLARITON_NUM_THREADS", "1", 1);
  REQUIRE(invoke({"witness", "--sweep", "lambda=0.05,0.1,0.2,0.3", "--out", a.str()}).code == 0);
  ::setenv("POLARITON_NUM_THREADS", "3", 1);
  REQUIRE(invoke({"witness", "--sweep", "lambda=0.05,0.1,0.2,0.3", "--out", b.str()}).code == 0);
  ::setenv("POLARITON_NUM_THREADS", "zero", 1);
  CHECK(invoke({"witness", "--out", b.str()}).code == 1);
  ::unsetenv("POLARITON_NUM_THREADS");
  for (const auto& e : fs::directory_iterator(a.dir))
    CHECK(slurp(e.path()) == slurp(b.dir / e.path().filename()));
}

TEST_CASE("witness command") {
  Scratch s("witness");
  SUBCASE("strongest coupling") {
    REQUIRE(invoke({"witness", "--out", s.str()}).code == 0);
    const auto j = load(s.dir / "witness.json");
    CHECK(j["paper_formula"].get<double>() == 0.04);
    CHECK(j["gaussian_route"].get<double>() == doctest::Approx(0.02202288503789629).epsilon(1e-11));
    CHECK(j["fock_route"].get<double>() == doctest::Approx(0.02202288503789629).epsilon(1e-11));
    CHECK(j["verdict"] == "entangled");
  }
  SUBCASE("uncoupled") {
    REQUIRE(invoke({"witness", "--set", "params.lambda=0", "--out", s.str()}).code == 0);
    const auto j = load(s.dir / "witness.json");
    CHECK(j["paper_formula"].get<double>() == 0.0);
    CHECK(j["gaussian_route"].get<double>() == 0.0);
    CHECK(std::abs(j["fock_route"].get<double>()) < 1e-12);
    CHECK(j["witness_value"].get<double>() == 0.0);
    CHECK(j["verdict"] == "inconclusive");
  }
  SUBCASE("detuned input is refused") {
    const auto r = invoke({"witness", "--set", "params.omega_b=1.1", "--out", s.str()});
    CHECK(r.code == 1);
    const auto j = load(s.dir / "witness.json");
    CHECK(j["status"] == "refused");
    CHECK(j["reason"].get<std::string>().find("resonance") != std::string::npos);
  }
  SUBCASE("svg needs a sweep") {
    CHECK(invoke({"witness", "--format", "svg", "--out", s.str()}).code == 1);
  }
}

TEST_CASE("dynamics command") {
  Scratch s("dynamics");
  SUBCASE("semiclassical vacuum stays at zero") {
    REQUIRE(invoke({"dynamics", "semiclassical", "--out", s.str(), "--format", "csv"}).code == 0);
    const auto rows = csv(s.dir / "semiclassical_trajectory.csv");
    REQUIRE(rows.size() == 10001);
    CHECK(rows[0][5] == "energy [omega_a]");
    for (std::size_t i = 1; i < rows.size(); ++i)
      for (int c = 1; c < 6; ++c) REQUIRE(rows[i][c] == "0");
  }
  SUBCASE("bilinear rabi flop beats at the polariton splitting") {
    REQUIRE(invoke({"dynamics", "rabi-flop", "--out", s.str(), "--format", "json"}).code == 0);
    const auto j = load(s.dir / "rabi_flop.json");
    const auto modes = polariton::normal_modes(polariton::ModelParams::from_collective(1, 1, 0.2));
    CHECK(std::abs(j["spectrum_argmax"].get<double>() - modes.splitting()) <= j["bin_width"].get<double>());
    CHECK(j["spectrum_total"].get<double>() ==
          doctest::Approx(j["signal_variance"].get<double>()).epsilon(1e-9));
  }
  SUBCASE("single-atom JC trace is cos^2(g t)") {
    REQUIRE(invoke({"dynamics", "rabi-flop", "--model", "jc-rwa", "--set", "params.g=0.1", "--out", s.str(),
                    "--format", "csv"})
                .code == 0);
    const auto rows = csv(s.dir / "rabi_flop_trajectory.csv");
    REQUIRE(rows.size() == 8193);
    for (std::size_t i = 1; i < rows.size(); i += 7) {
      const double c = std::cos(0.1 * std::stod(rows[i][0]));
      CHECK(std::abs(std::stod(rows[i][1]) - c * c) < 1e-11);
    }
  }
  SUBCASE("vacuum correlation resolves both polaritons") {
    REQUIRE(invoke({"dynamics", "vacuum-correlation", "--out", s.str(), "--format", "json"}).code == 0);
    const auto j = load(s.dir / "vacuum_correlation.json");
    CHECK(j["peaks"]["status"] == "split");
    CHECK(j["spectrum_total"].get<double>() == doctest::Approx(j["static_variance"].get<double>()).epsilon(1e-9));
  }
  SUBCASE("mode and model must agree") {
    CHECK(invoke({"dynamics", "vacuum-correlation", "--model", "dicke", "--out", s.str()}).code == 1);
    CHECK(invoke({"dynamics", "warp", "--out", s.str()}).code == 1);
  }
}

TEST_CASE("classical command reports the agreement") {
  Scratch s("classical");
  REQUIRE(invoke({"classical", "--out", s.str(), "--format", "json,svg"}).code == 0);
  const auto j = load(s.dir / "classical.json");
  CHECK(j["resolved"] == true);
  CHECK(j["deviation"].get<double>() <= 0.05);
  CHECK(fs::exists(s.dir / "classical_transmission.svg"));
}

TEST_CASE("verify command") {
  Scratch a("verify_a"), b("verify_b");
  SUBCASE("default suite passes and is reproducible") {
    REQUIRE(invoke({"verify", "--out", a.str(), "--seed", "7"}).code == 0);
    REQUIRE(invoke({"verify", "--out", b.str(), "--seed", "7"}).code == 0);
    CHECK(slurp(a.dir / "verify.json") == slurp(b.dir / "verify.json"));
    const auto j = load(a.dir / "verify.json");
    CHECK(j["status"] == "pass");
    CHECK(j["seed"] == 7);
    CHECK(j["checks"].size() == 5);
    for (const auto& c : j["checks"])
      if (c["name"] == "sqrt_n_scaling") {
        CHECK(std::abs(c["classical_slope"].get<double>() - 0.5) <= 0.02);
        CHECK(std::abs(c["jc_rwa_slope"].get<double>() - 0.5) <= 0.02);
      }
  }
  SUBCASE("an impossible tolerance fails with exit code 3") {
    REQUIRE(invoke({"verify", "--out", a.str(), "--set", "verify.tolerances.cutoff_delta=1e-30"}).code == 3);
    const auto j = load(a.dir / "verify.json");
    CHECK(j["status"] == "fail");
    CHECK(j["failed"] == 1);
  }
  SUBCASE("only JSON reports") { CHECK(invoke({"verify", "--out", a.str(), "--format", "csv"}).code == 1); }
}

TEST_CASE("configuration files and overrides") {
  Scratch s("config");
  const auto cfg = s.dir / "run.json";
  std::ofstream(cfg) << R"({"model": "bilinear", "params": {"lambda": 0.1}, "hilbert": {"photon_cutoff": 12},
                            "output": {"formats": "json"}})";
  SUBCASE("file values") {
    REQUIRE(invoke({"witness", "--config", cfg.string(), "--out", s.str()}).code == 0);
    const auto j = load(s.dir / "witness.json");
    CHECK(j["params"]["lambda"] == 0.1);
    CHECK(j["hilbert"]["photon_cutoff"] == 12);
    CHECK_FALSE(fs::exists(s.dir / "witness.csv"));
  }
  SUBCASE("flags win over the file") {
    REQUIRE(invoke({"witness", "--config", cfg.string(), "--set", "params.lambda=0.3", "--out", s.str()}).code == 0);
    CHECK(load(s.dir / "witness.json")["params"]["lambda"] == 0.3);
  }
  SUBCASE("errors exit with code 1") {
    std::ofstream(s.dir / "bad.json") << "{not json";
    std::ofstream(s.dir / "typo.json") << R"({"params": {"lamda": 0.1}})";
    std::ofstream(s.dir / "foreign.json") << R"({"cavity": {"area": 1e-12}})";
    CHECK(invoke({"witness", "--config", (s.dir / "bad.json").string(), "--out", s.str()}).code == 1);
    CHECK(invoke({"witness", "--config", (s.dir / "typo.json").string(), "--out", s.str()}).code == 1);
    CHECK(invoke({"witness", "--config", (s.dir / "foreign.json").string(), "--out", s.str()}).code == 1);
    CHECK(invoke({"spectrum", "--sweep", "nonsense=1,2", "--out", s.str()}).code == 1);
    CHECK(invoke({"spectrum", "--sweep", "lambda=0.1,x", "--out", s.str()}).code == 1);
    CHECK(invoke({"spectrum", "--format", "xml", "--out", s.str()}).code == 1);
    CHECK(invoke({"spectrum", "--set", "params.g=0.1", "params.lambda=0.1", "--out", s.str()}).code == 1);
    CHECK(invoke({"spectrum", "--set", "params.lambda=0.6", "--out", s.str()}).code == 1);  // above threshold
    CHECK(invoke({"verify", "--model", "dicke", "--out", s.str()}).code == 1);
  }
}
