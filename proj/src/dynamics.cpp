#include "polariton/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "polariton/errors.hpp"
#include "polariton/spectral.hpp"

namespace polariton {

TimeGrid::TimeGrid(double dt_, int steps_) : dt(dt_), steps(steps_) {
  if (!(dt > 0.0)) throw ConfigError("TimeGrid: dt must be positive");
  if (steps < 1) throw ConfigError("TimeGrid: need at least one step");
}

const Channel& Trajectory::channel(const std::string& name) const {
  for (const auto& c : channels)
    if (c.name == name) return c;
  throw ConfigError("Trajectory: no channel named '" + name + "'");
}

namespace {

void check_resolved(const EigenDecomposition& dec, double dt) {
  const double emax = dec.eigenvalues.cwiseAbs().maxCoeff();
  if (dt * emax >= 0.5) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "time step does not resolve the spectrum: dt * max|E| = " << dt * emax
        << " (need < 0.5, i.e. dt < " << 0.5 / emax << ")";
    throw ConfigError(msg.str());
  }
}

std::vector<double> window_weights(Window window, int n) {
  std::vector<double> h(n, 1.0);
  if (window == Window::hann && n > 1)
    for (int i = 0; i < n; ++i) h[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  return h;
}

}  // namespace

StateTrajectory evolve(const HermitianOperator& h, const StateVector& psi0, const TimeGrid& grid) {
  if (psi0.dim() != h.dim()) throw ConfigError("evolve: state dimension mismatch");
  const auto dec = eigendecompose(h);
  check_resolved(dec, grid.dt);
  const Eigen::VectorXcd coeff = dec.eigenvectors.adjoint() * psi0.amplitudes();
  StateTrajectory out{grid, {}};
  out.states.reserve(grid.steps);
  for (int i = 0; i < grid.steps; ++i) {
    const double t = grid.time(i);
    Eigen::VectorXcd phased(coeff.size());
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
      phased[k] = std::polar(1.0, -dec.eigenvalues[k] * t) * coeff[k];
    out.states.push_back(dec.eigenvectors * phased);
  }
  return out;
}

Trajectory rabi_flop_signal(ModelKind kind, const ModelParams& params, const HilbertSpec& spec,
                            const TimeGrid& grid) {
  const auto h = build_hamiltonian(kind, params, spec);
  const auto dec = eigendecompose(h);
  check_resolved(dec, grid.dt);
  const auto psi0 = StateVector::basis(spec.dim(), spec.index(0, 1));
  const Eigen::VectorXcd coeff = dec.eigenvectors.adjoint() * psi0.amplitudes();

  Eigen::VectorXd matter_number(spec.dim());
  for (int n = 0; n <= spec.photon_cutoff; ++n)
    for (int k = 0; k < spec.matter_dim; ++k) matter_number[spec.index(n, k)] = k;

  Channel channel{"matter_excitation", {}};
  channel.values.reserve(grid.steps);
  Eigen::VectorXcd phased(coeff.size());
  for (int i = 0; i < grid.steps; ++i) {
    const double t = grid.time(i);
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
      phased[k] = std::polar(1.0, -dec.eigenvalues[k] * t) * coeff[k];
    const Eigen::VectorXcd psi = dec.eigenvectors * phased;
    channel.values.emplace_back(psi.cwiseAbs2().dot(matter_number), 0.0);
  }
  return {grid, {std::move(channel)}};
}

SpectrumSeries flop_spectrum(const Trajectory& trajectory, const std::string& name,
                             Window window) {
  const auto& values = trajectory.channel(name).values;
  const int n = static_cast<int>(values.size());
  if (n < 16) throw ConfigError("flop_spectrum: need at least 16 samples");
  if (n != trajectory.grid.steps)
    throw ConfigError("flop_spectrum: channel length does not match the time grid");

  double mean = 0.0;
  for (const auto& v : values) mean += v.real();
  mean /= n;
  const auto h = window_weights(window, n);
  double h2 = 0.0;
  std::vector<std::complex<double>> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = h[i] * (values[i].real() - mean);
    h2 += h[i] * h[i];
  }
  const auto spectrum = detail::dft(x, -1);
  std::vector<double> freq, inten;
  const double df = 2.0 * std::numbers::pi / (n * trajectory.grid.dt);
  for (int k = 0; k <= n / 2; ++k) {
    const double fold = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    freq.push_back(k * df);
    inten.push_back(fold * std::norm(spectrum[k]) / (n * h2));
  }
  return SpectrumSeries(std::move(freq), std::move(inten));
}

double semiclassical_step_bound(const ModelParams& params) {
  return 0.01 / std::max(params.omega_a(), params.omega_b());
}

Trajectory semiclassical_trajectory(const ModelParams& params, std::complex<double> a0,
                                    std::complex<double> b0, const TimeGrid& grid) {
  const double bound = semiclassical_step_bound(params);
  if (grid.dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "semiclassical step dt = " << grid.dt << " exceeds the RK4 bound 0.01/max(omega) = "
        << bound;
    throw ConfigError(msg.str());
  }
  using C = std::complex<double>;
  const double wa = params.omega_a(), wb = params.omega_b(), lam = params.lambda();
  const C minus_i(0.0, -1.0);
  auto rhs = [&](C a, C b, C& da, C& db) {
    da = minus_i * (wa * a + lam * (b + std::conj(b)));
    db = minus_i * (wb * b + lam * (a + std::conj(a)));
  };
  auto energy = [&](C a, C b) {
    return wa * std::norm(a) + wb * std::norm(b) + 4.0 * lam * a.real() * b.real();
  };

  Channel ca{"a", {}}, cb{"b", {}}, ce{"energy", {}};
  ca.values.reserve(grid.steps);
  cb.values.reserve(grid.steps);
  ce.values.reserve(grid.steps);
  C a = a0, b = b0;
  const double dt = grid.dt;
  for (int i = 0; i < grid.steps; ++i) {
    ca.values.push_back(a);
    cb.values.push_back(b);
    ce.values.emplace_back(energy(a, b), 0.0);
    C k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    rhs(a, b, k1a, k1b);
    rhs(a + 0.5 * dt * k1a, b + 0.5 * dt * k1b, k2a, k2b);
    rhs(a + 0.5 * dt * k2a, b + 0.5 * dt * k2b, k3a, k3b);
    rhs(a + dt * k3a, b + dt * k3b, k4a, k4b);
    a += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    b += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
  }
  return {grid, {std::move(ca), std::move(cb), std::move(ce)}};
}

CorrelationLines vacuum_correlation_lines(const ModelParams& params, const HilbertSpec& spec) {
  const auto h = build_bilinear_hamiltonian(params, spec);
  const auto dec = eigendecompose(h);
  const Eigen::VectorXcd ground = dec.eigenvectors.col(0);

  // X|0> with X = a + a' on the photon factor.
  Eigen::VectorXcd x_ground = Eigen::VectorXcd::Zero(spec.dim());
  for (int n = 0; n <= spec.photon_cutoff; ++n)
    for (int k = 0; k < spec.matter_dim; ++k) {
      const cplx amp = ground[spec.index(n, k)];
      if (n + 1 <= spec.photon_cutoff) x_ground[spec.index(n + 1, k)] += std::sqrt(n + 1.0) * amp;
      if (n > 0) x_ground[spec.index(n - 1, k)] += std::sqrt(double(n)) * amp;
    }
  const Eigen::VectorXcd overlaps = dec.eigenvectors.adjoint() * x_ground;

  CorrelationLines lines;
  lines.static_variance = x_ground.squaredNorm();
  for (int k = 0; k < dec.size(); ++k) {
    const double w = std::norm(overlaps[k]);
    if (w == 0.0) continue;
    lines.frequencies.push_back(dec.eigenvalues[k] - dec.eigenvalues[0]);
    lines.weights.push_back(w);
  }
  return lines;
}

double required_correlation_horizon(const ModelParams& params) {
  const auto modes = normal_modes(params);
  if (modes.splitting() <= 0.0) return 0.0;
  // Eight N-point bins between the lines: two Hann main lobes with margin.
  return 16.0 * std::numbers::pi / modes.splitting();
}

SpectrumSeries vacuum_correlation_spectrum(const ModelParams& params, const HilbertSpec& spec,
                                           const TimeGrid& grid, Window window) {
  const int n = grid.steps;
  if (n < 16) throw ConfigError("vacuum_correlation_spectrum: need at least 16 samples");
  const double needed = required_correlation_horizon(params);
  if (grid.horizon() < needed) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "time horizon " << grid.horizon() << " cannot resolve the polariton splitting; "
        << "need steps * dt >= " << needed;
    throw ConfigError(msg.str());
  }
  const auto lines = vacuum_correlation_lines(params, spec);
  const double nyquist = std::numbers::pi / grid.dt;
  for (std::size_t k = 0; k < lines.weights.size(); ++k)
    if (lines.weights[k] > 1e-12 * lines.static_variance && lines.frequencies[k] >= nyquist) {
      std::ostringstream msg;
      msg << "time step aliases a correlation line at " << lines.frequencies[k]
          << "; need dt < " << std::numbers::pi / lines.frequencies[k];
      throw ConfigError(msg.str());
    }

  // C(l dt) for l = 0..n-1.
  std::vector<cplx> corr(n, 0.0);
  for (int l = 0; l < n; ++l) {
    const double t = grid.time(l);
    cplx c = 0.0;
    for (std::size_t k = 0; k < lines.weights.size(); ++k)
      c += lines.weights[k] * std::polar(1.0, -lines.frequencies[k] * t);
    corr[l] = c;
  }

  const auto h = window_weights(window, n);
  std::vector<double> lag(n, 0.0);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i + l < n; ++i) lag[l] += h[i] * h[i + l];

  const int m = 2 * n - 1;
  std::vector<cplx> seq(m, 0.0);
  seq[0] = lag[0] * corr[0];
  for (int l = 1; l < n; ++l) {
    seq[l] = lag[l] * corr[l];
    seq[m - l] = lag[l] * std::conj(corr[l]);
  }
  const auto s = detail::dft(seq, +1);

  const double norm = 1.0 / (m * lag[0]);
  const double df = 2.0 * std::numbers::pi / (m * grid.dt);
  double peak = 0.0;
  for (const auto& v : s) peak = std::max(peak, v.real() * norm);
  std::vector<double> freq(m), inten(m);
  const int half = (m + 1) / 2;  // bins >= half are negative frequencies
  for (int i = 0; i < m; ++i) {
    const int bin = i < m - half ? i + half : i - (m - half);  // rotate to ascending
    const int signed_bin = bin >= half ? bin - m : bin;
    freq[i] = signed_bin * df;
    double v = s[bin].real() * norm;
    // Rounding can leave values of order -1e-16 * peak in the far tails.
    if (v < 0.0 && v > -1e-12 * peak) v = 0.0;
    inten[i] = v;
  }
  return SpectrumSeries(std::move(freq), std::move(inten));
}

}  // namespace polariton
