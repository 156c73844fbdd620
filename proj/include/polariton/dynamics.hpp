#pragma once

#include <complex>
#include <string>
#include <vector>

#include "polariton/model.hpp"
#include "polariton/spectrum.hpp"

namespace polariton {

/// Uniform grid t_i = i * dt, i = 0..steps-1.
struct TimeGrid {
  double dt;
  int steps;

  TimeGrid(double dt, int steps);
  double time(int i) const { return i * dt; }
  double horizon() const { return steps * dt; }
};

struct Channel {
  std::string name;
  std::vector<std::complex<double>> values;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<Channel> channels;

  /// Throws ConfigError if absent.
  const Channel& channel(const std::string& name) const;
};

struct StateTrajectory {
  TimeGrid grid;
  std::vector<Eigen::VectorXcd> states;
};

/// Exact propagation through the eigendecomposition of H.
/// Requires dt * max|E| < 0.5.
StateTrajectory evolve(const HermitianOperator& h, const StateVector& psi0, const TimeGrid& grid);

/// Matter excitation (b'b, or J_z + j) starting from one matter quantum and
/// the photon vacuum. Channel "matter_excitation".
Trajectory rabi_flop_signal(ModelKind kind, const ModelParams& params, const HilbertSpec& spec,
                            const TimeGrid& grid);

enum class Window { none, hann };

/// One-sided |DFT|^2 of the mean-subtracted real part of `channel`,
/// normalized so that the intensities sum to the signal variance
/// (exactly, for Window::none). Frequencies are angular, 2 pi k / (N dt).
SpectrumSeries flop_spectrum(const Trajectory& trajectory, const std::string& channel,
                             Window window = Window::none);

/// Largest step accepted by semiclassical_trajectory.
double semiclassical_step_bound(const ModelParams& params);

/// Factorized mean-field dynamics of <a>, <b> (RK4), channels "a", "b" and the
/// conserved classical energy "energy".
Trajectory semiclassical_trajectory(const ModelParams& params, std::complex<double> a0,
                                    std::complex<double> b0, const TimeGrid& grid);

struct CorrelationLines {
  std::vector<double> frequencies;  // E_k - E_0
  std::vector<double> weights;      // |<k| a + a' |0>|^2
  double static_variance;           // <0|(a + a')^2|0>
};

/// Eigen-expansion of <0|X(t) X(0)|0>, X = a + a', on the bilinear ground state.
CorrelationLines vacuum_correlation_lines(const ModelParams& params, const HilbertSpec& spec);

/// Horizon needed to separate the two polariton lines.
double required_correlation_horizon(const ModelParams& params);

/// Lag-windowed correlogram of <0|X(t) X(0)|0> on the grid's lags. Intensities
/// are non-negative and sum to <0|X^2|0>. Frequencies span [-pi/dt, pi/dt).
SpectrumSeries vacuum_correlation_spectrum(const ModelParams& params, const HilbertSpec& spec,
                                           const TimeGrid& grid, Window window = Window::hann);

}  // namespace polariton
