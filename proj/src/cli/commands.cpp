#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include "polariton/errors.hpp"
#include "polariton/spectral.hpp"
#include "polariton/witness.hpp"

namespace polariton::cli {

std::string run_stem(const Job& job) {
  if (job.verb != Verb::dynamics) return to_string(job.verb);
  std::string s = to_string(job.mode);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

bool draws_plots(const Job& job) { return job.verb != Verb::witness && job.verb != Verb::verify; }

namespace {

json params_json(const ModelParams& p) {
  return {{"omega_a", number(p.omega_a())}, {"omega_b", number(p.omega_b())}, {"g", number(p.g())},
          {"n_atoms", p.n_atoms()},         {"lambda", number(p.lambda())}};
}

json hilbert_json(const HilbertSpec& h) {
  return {{"photon_cutoff", h.photon_cutoff}, {"matter_dim", h.matter_dim}, {"dim", h.dim()}};
}

json modes_json(const ModelParams& p) {
  if (!p.is_stable()) return nullptr;
  const auto m = normal_modes(p);
  return {{"omega_minus", number(m.omega_minus)},
          {"omega_plus", number(m.omega_plus)},
          {"splitting", number(m.splitting())}};
}

json peaks_json(const PeakReport& r) {
  json f = json::array(), h = json::array();
  for (double x : r.frequencies) f.push_back(number(x));
  for (double x : r.heights) h.push_back(number(x));
  return {{"status", to_string(r.status)},
          {"frequencies", f},
          {"heights", h},
          {"splitting", r.splitting ? number(*r.splitting) : json(nullptr)}};
}

json cavity_json(const CavityParams& c) {
  return {{"length_m", number(c.length)},
          {"mirror_r", number(c.mirror_r)},
          {"finesse", number(finesse(c.mirror_r))},
          {"n_background", number(c.n_background)},
          {"area_m2", number(c.area)},
          {"n_dipoles", number(c.n_dipoles)},
          {"dipole_moment_Cm", number(c.dipole_moment)},
          {"omega_b_rad_s", number(c.omega_b)},
          {"gamma_rad_s", number(c.gamma)}};
}

json strings_json(const std::vector<std::string>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

Table spectrum_table(const std::string& stem, const SpectrumSeries& s, const std::string& unit) {
  Table t{stem, {"omega [" + unit + "]", "intensity [1]"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i) t.rows.push_back({s.frequencies()[i], s.intensities()[i]});
  return t;
}

Plot spectrum_plot(const std::string& stem, const std::string& title, const SpectrumSeries& s,
                   const std::string& unit) {
  return {stem, title, "omega [" + unit + "]", "intensity [1]", s.frequencies(), s.intensities()};
}

Table transmission_table(const std::string& stem, const SpectrumSeries& s, double omega_b) {
  Table t{stem, {"omega [rad/s]", "omega_ratio [omega/omega_b]", "transmission [1]"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i)
    t.rows.push_back({s.frequencies()[i], s.frequencies()[i] / omega_b, s.intensities()[i]});
  return t;
}

Plot transmission_plot(const std::string& stem, const SpectrumSeries& s, double omega_b) {
  Plot p{stem, "Cavity transmission", "omega / omega_b", "transmission [1]", {}, s.intensities()};
  for (double w : s.frequencies()) p.x.push_back(w / omega_b);
  return p;
}

PointResult quantum_spectrum(const RunConfig& rc) {
  const auto& p = *rc.params;
  const auto& spec = *rc.hilbert;
  const auto h = build_hamiltonian(quantum_kind(rc.model), p, spec);
  EigenOptions opt;
  opt.count = std::min(rc.levels, h.dim());
  opt.vectors = false;
  opt.seed = rc.seed;
  const auto dec = eigendecompose(h, opt);

  PointResult r;
  Table t{"spectrum_levels", {"level [1]", "energy [omega_a]", "excitation [omega_a]"}, {}};
  Plot plot{"spectrum_levels", "Lowest eigenvalues", "level [1]", "energy [omega_a]", {}, {}};
  json levels = json::array();
  const double e0 = dec.eigenvalues[0];
  for (int k = 0; k < dec.size(); ++k) {
    const double e = dec.eigenvalues[k];
    t.rows.push_back({double(k), e, e - e0});
    plot.x.push_back(k);
    plot.y.push_back(e);
    levels.push_back({{"index", k}, {"energy", number(e)}, {"excitation", number(e - e0)}});
  }
  const double gap = dec.size() > 1 ? dec.eigenvalues[1] - e0 : std::nan("");

  r.summary["verb"] = "spectrum";
  r.summary["model"] = to_string(rc.model);
  r.summary["params"] = params_json(p);
  r.summary["hilbert"] = hilbert_json(spec);
  r.summary["ground_energy"] = number(e0);
  r.summary["first_gap"] = number(gap);
  if (rc.model == ModelChoice::jc_rwa) {
    const auto [lo, hi] = jc_single_excitation_energies(p);
    r.summary["single_excitation"] = {
        {"lower", number(lo)}, {"upper", number(hi)}, {"splitting", number(hi - lo)}};
  } else {
    r.summary["normal_modes"] = modes_json(p);
    if (rc.model == ModelChoice::bilinear)
      r.summary["ground_energy_closed_form"] = number(ground_energy_bilinear(p));
  }
  r.summary["levels"] = levels;
  r.tables.push_back(std::move(t));
  r.plots.push_back(std::move(plot));
  r.scalars = {{"ground_energy [omega_a]", e0}, {"first_gap [omega_a]", gap}};
  return r;
}

PointResult classical_spectrum(const RunConfig& rc) {
  const auto& cav = *rc.cavity;
  const auto res = transmission_spectrum(cav, *rc.grid);
  const auto peaks = peak_splitting(res.spectrum);
  PointResult r;
  r.summary["verb"] = "spectrum";
  r.summary["model"] = "classical";
  r.summary["cavity"] = cavity_json(cav);
  r.summary["peaks"] = peaks_json(peaks);
  r.summary["predicted_splitting_rad_s"] = number(predicted_splitting(cav));
  r.summary["warnings"] = strings_json(res.warnings);
  r.tables.push_back(transmission_table("spectrum_transmission", res.spectrum, cav.omega_b));
  r.plots.push_back(transmission_plot("spectrum_transmission", res.spectrum, cav.omega_b));
  r.scalars = {{"splitting [rad/s]", peaks.splitting.value_or(std::nan(""))},
               {"predicted_splitting [rad/s]", predicted_splitting(cav)}};
  return r;
}

PointResult classical_agreement(const RunConfig& rc) {
  const auto& cav = *rc.cavity;
  const auto a = classical_quantum_agreement(cav, *rc.grid);
  const auto res = transmission_spectrum(cav, *rc.grid);
  PointResult r;
  r.summary["verb"] = "classical";
  r.summary["cavity"] = cavity_json(cav);
  r.summary["peaks"] = peaks_json(a.classical);
  r.summary["classical_splitting_rad_s"] = number(a.classical_splitting);
  r.summary["quantum_splitting_rad_s"] = number(a.quantum_splitting);
  r.summary["predicted_splitting_rad_s"] = number(a.predicted);
  r.summary["lambda_rad_s"] = number(a.lambda);
  r.summary["lambda_over_omega_b"] = number(a.lambda / cav.omega_b);
  r.summary["deviation"] = number(a.deviation);
  r.summary["resolved"] = a.resolved;
  r.summary["warnings"] = strings_json(a.warnings);
  r.tables.push_back(transmission_table("classical_transmission", res.spectrum, cav.omega_b));
  r.plots.push_back(transmission_plot("classical_transmission", res.spectrum, cav.omega_b));
  r.scalars = {{"classical_splitting [rad/s]", a.classical_splitting},
               {"quantum_splitting [rad/s]", a.quantum_splitting},
               {"predicted_splitting [rad/s]", a.predicted},
               {"deviation [1]", a.deviation}};
  return r;
}

PointResult witness(const RunConfig& rc) {
  const auto& p = *rc.params;
  const auto& spec = *rc.hilbert;
  const auto h = build_bilinear_hamiltonian(p, spec);
  const auto gs = ground_state(h);
  const auto wv = witness_evaluate(p, h, gs.state);
  const auto scan = separable_bound_scan(p);
  const double formula = linear_entropy_predicted(p);
  const double gaussian = gaussian_linear_entropy(gaussian_ground_state(p), Subsystem::photon);
  const double fock = linear_entropy(reduced_density(gs.state, spec, Subsystem::photon));
  const double ratio = formula > 0.0 ? gaussian / formula : std::nan("");

  PointResult r;
  r.summary["verb"] = "witness";
  r.summary["model"] = "bilinear";
  r.summary["params"] = params_json(p);
  r.summary["hilbert"] = hilbert_json(spec);
  r.summary["ground_energy"] = number(gs.energy);
  r.summary["witness_value"] = number(wv.value);
  r.summary["separable_floor"] = number(wv.separable_floor);
  r.summary["separable_scan_minimum"] = number(scan.minimum);
  r.summary["verdict"] = wv.verdict == Verdict::entangled ? "entangled" : "inconclusive";
  r.summary["paper_formula"] = number(formula);
  r.summary["gaussian_route"] = number(gaussian);
  r.summary["fock_route"] = number(fock);
  r.summary["route_difference"] = number(std::abs(gaussian - fock));
  r.summary["gaussian_over_paper_formula"] = number(ratio);

  Table t{"witness",
          {"lambda [omega_a]", "witness [omega_a]", "separable_scan_minimum [omega_a]", "paper_formula [1]",
           "gaussian_route [1]", "fock_route [1]"},
          {{p.lambda(), wv.value, scan.minimum, formula, gaussian, fock}}};
  r.tables.push_back(std::move(t));
  r.scalars = {{"witness [omega_a]", wv.value},
               {"paper_formula [1]", formula},
               {"gaussian_route [1]", gaussian},
               {"fock_route [1]", fock}};
  return r;
}

double spread(const std::vector<std::complex<double>>& v) {
  double mean = 0.0, var = 0.0;
  for (const auto& x : v) mean += x.real();
  mean /= v.size();
  for (const auto& x : v) var += (x.real() - mean) * (x.real() - mean);
  return var / v.size();
}

PointResult rabi_flop(const RunConfig& rc) {
  const auto& p = *rc.params;
  const auto& grid = *rc.time;
  const auto traj = rabi_flop_signal(quantum_kind(rc.model), p, *rc.hilbert, grid);
  const auto spec = flop_spectrum(traj, "matter_excitation", rc.window);
  const auto peaks = peak_splitting(spec);
  const auto& signal = traj.channel("matter_excitation").values;

  double expected = std::nan("");
  if (rc.model == ModelChoice::jc_rwa)
    expected = 2.0 * p.g() * std::sqrt(double(p.n_atoms()));
  else if (p.is_stable())
    expected = normal_modes(p).splitting();

  PointResult r;
  r.summary["verb"] = "dynamics";
  r.summary["mode"] = "rabi-flop";
  r.summary["model"] = to_string(rc.model);
  r.summary["params"] = params_json(p);
  r.summary["hilbert"] = hilbert_json(*rc.hilbert);
  r.summary["dt"] = number(grid.dt);
  r.summary["steps"] = grid.steps;
  r.summary["window"] = rc.window == Window::hann ? "hann" : "none";
  r.summary["bin_width"] = number(spec.bin_width());
  r.summary["spectrum_argmax"] = number(spec.argmax());
  r.summary["expected_beat"] = number(expected);
  r.summary["within_one_bin"] = std::abs(spec.argmax() - expected) <= spec.bin_width();
  r.summary["spectrum_total"] = number(spec.total());
  r.summary["signal_variance"] = number(spread(signal));
  r.summary["peaks"] = peaks_json(peaks);

  Table tt{"rabi_flop_trajectory", {"t [1/omega_a]", "matter_excitation [1]"}, {}};
  Plot tp{"rabi_flop_trajectory", "Matter excitation", "t [1/omega_a]", "matter_excitation [1]", {}, {}};
  for (int i = 0; i < grid.steps; i += rc.output_stride) {
    tt.rows.push_back({grid.time(i), signal[i].real()});
    tp.x.push_back(grid.time(i));
    tp.y.push_back(signal[i].real());
  }
  r.tables.push_back(std::move(tt));
  r.tables.push_back(spectrum_table("rabi_flop_spectrum", spec, "omega_a"));
  r.plots.push_back(std::move(tp));
  r.plots.push_back(spectrum_plot("rabi_flop_spectrum", "Rabi flop spectrum", spec, "omega_a"));
  r.scalars = {{"spectrum_argmax [omega_a]", spec.argmax()}, {"expected_beat [omega_a]", expected}};
  return r;
}

PointResult semiclassical(const RunConfig& rc) {
  const auto& p = *rc.params;
  const auto& grid = *rc.time;
  const auto traj = semiclassical_trajectory(p, rc.a0, rc.b0, grid);
  const auto& a = traj.channel("a").values;
  const auto& b = traj.channel("b").values;
  const auto& e = traj.channel("energy").values;
  double amp = 0.0, drift = 0.0;
  for (int i = 0; i < grid.steps; ++i) {
    amp = std::max({amp, std::abs(a[i]), std::abs(b[i])});
    drift = std::max(drift, std::abs(e[i].real() - e[0].real()));
  }
  const auto spec = flop_spectrum(traj, "a", rc.window);
  const auto peaks = peak_splitting(spec);

  PointResult r;
  r.summary["verb"] = "dynamics";
  r.summary["mode"] = "semiclassical";
  r.summary["model"] = "semiclassical";
  r.summary["params"] = params_json(p);
  r.summary["a0"] = {number(rc.a0.real()), number(rc.a0.imag())};
  r.summary["b0"] = {number(rc.b0.real()), number(rc.b0.imag())};
  r.summary["dt"] = number(grid.dt);
  r.summary["steps"] = grid.steps;
  r.summary["horizon"] = number(grid.horizon());
  r.summary["max_amplitude"] = number(amp);
  r.summary["energy_drift"] = number(drift);
  r.summary["normal_modes"] = modes_json(p);
  r.summary["bin_width"] = number(spec.bin_width());
  r.summary["peaks"] = peaks_json(peaks);

  Table tt{"semiclassical_trajectory",
           {"t [1/omega_a]", "re_a [1]", "im_a [1]", "re_b [1]", "im_b [1]", "energy [omega_a]"},
           {}};
  Plot tp{"semiclassical_trajectory", "Mean-field photon amplitude", "t [1/omega_a]", "re_a [1]", {}, {}};
  for (int i = 0; i < grid.steps; i += rc.output_stride) {
    tt.rows.push_back({grid.time(i), a[i].real(), a[i].imag(), b[i].real(), b[i].imag(), e[i].real()});
    tp.x.push_back(grid.time(i));
    tp.y.push_back(a[i].real());
  }
  r.tables.push_back(std::move(tt));
  r.tables.push_back(spectrum_table("semiclassical_spectrum", spec, "omega_a"));
  r.plots.push_back(std::move(tp));
  r.plots.push_back(spectrum_plot("semiclassical_spectrum", "Mean-field spectrum", spec, "omega_a"));
  r.scalars = {{"max_amplitude [1]", amp}, {"energy_drift [omega_a]", drift}};
  return r;
}

PointResult vacuum_correlation(const RunConfig& rc) {
  const auto& p = *rc.params;
  const auto& spec = *rc.hilbert;
  const auto lines = vacuum_correlation_lines(p, spec);
  const auto s = vacuum_correlation_spectrum(p, spec, *rc.time, rc.window);
  const auto peaks = peak_splitting(s);

  PointResult r;
  r.summary["verb"] = "dynamics";
  r.summary["mode"] = "vacuum-correlation";
  r.summary["model"] = "bilinear";
  r.summary["params"] = params_json(p);
  r.summary["hilbert"] = hilbert_json(spec);
  r.summary["dt"] = number(rc.time->dt);
  r.summary["steps"] = rc.time->steps;
  r.summary["window"] = rc.window == Window::hann ? "hann" : "none";
  r.summary["required_horizon"] = number(required_correlation_horizon(p));
  r.summary["bin_width"] = number(s.bin_width());
  r.summary["static_variance"] = number(lines.static_variance);
  r.summary["spectrum_total"] = number(s.total());
  r.summary["normal_modes"] = modes_json(p);
  r.summary["peaks"] = peaks_json(peaks);

  Table lt{"vacuum_correlation_lines", {"omega [omega_a]", "weight [1]"}, {}};
  for (std::size_t k = 0; k < lines.frequencies.size(); ++k)
    lt.rows.push_back({lines.frequencies[k], lines.weights[k]});
  r.tables.push_back(spectrum_table("vacuum_correlation_spectrum", s, "omega_a"));
  r.tables.push_back(std::move(lt));
  // plot the positive band only; the CSV keeps every bin
  Plot plot{"vacuum_correlation_spectrum", "Vacuum correlation spectrum", "omega [omega_a]", "intensity [1]", {}, {}};
  const double top = 2.0 * std::max(p.omega_a(), p.is_stable() ? normal_modes(p).omega_plus : 0.0);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.frequencies()[i] >= 0.0 && s.frequencies()[i] <= top) {
      plot.x.push_back(s.frequencies()[i]);
      plot.y.push_back(s.intensities()[i]);
    }
  r.plots.push_back(std::move(plot));
  const bool two = peaks.frequencies.size() == 2;
  r.scalars = {{"peak_count [1]", double(peaks.frequencies.size())},
               {"lower_peak [omega_a]", two ? peaks.frequencies[0] : std::nan("")},
               {"upper_peak [omega_a]", two ? peaks.frequencies[1] : std::nan("")}};
  return r;
}

}  // namespace

PointResult compute_point(const RunConfig& rc) {
  switch (rc.verb) {
    case Verb::spectrum:
      return rc.model == ModelChoice::classical ? classical_spectrum(rc) : quantum_spectrum(rc);
    case Verb::witness: return witness(rc);
    case Verb::classical: return classical_agreement(rc);
    case Verb::dynamics:
      switch (rc.mode) {
        case DynamicsMode::rabi_flop: return rabi_flop(rc);
        case DynamicsMode::semiclassical: return semiclassical(rc);
        case DynamicsMode::vacuum_correlation: return vacuum_correlation(rc);
      }
      break;
    case Verb::verify: break;
  }
  throw ConfigError("compute_point: unsupported verb");
}

}  // namespace polariton::cli
