#include "polariton/classical_cavity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polariton/errors.hpp"
#include "polariton/spectral.hpp"

namespace polariton {

void CavityParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string("CavityParams: ") + name + " must be positive");
  };
  positive(length, "length");
  positive(area, "area");
  positive(n_background, "n_background");
  positive(n_dipoles, "n_dipoles");
  positive(omega_b, "omega_b");
  positive(eps0, "eps0");
  positive(hbar, "hbar");
  if (!(dipole_moment >= 0.0)) throw ConfigError("CavityParams: dipole_moment must be >= 0");
  if (!(gamma >= 0.0)) throw ConfigError("CavityParams: gamma must be >= 0");
  if (!(mirror_r > 0.0 && mirror_r < 1.0))
    throw ConfigError("CavityParams: mirror reflectivity must lie in (0, 1)");
}

double tuned_length(double omega, double n_background, int order) {
  if (!(omega > 0.0) || !(n_background > 0.0) || order < 1)
    throw ConfigError("tuned_length: invalid arguments");
  return order * std::numbers::pi * si::speed_of_light / (n_background * omega);
}

double finesse(double mirror_r) {
  const double r2 = mirror_r * mirror_r;
  return std::numbers::pi * mirror_r / (1.0 - r2);
}

double mirror_r_for_finesse(double f) {
  if (!(f > 0.0)) throw ConfigError("mirror_r_for_finesse: finesse must be positive");
  // pi r / (1 - r^2) = f  =>  f r^2 + pi r - f = 0
  const double pi = std::numbers::pi;
  return (-pi + std::sqrt(pi * pi + 4.0 * f * f)) / (2.0 * f);
}

std::complex<double> lorentz_permittivity(const CavityParams& cavity, double omega) {
  if (!(omega > 0.0)) throw ConfigError("lorentz_permittivity: omega must be positive");
  const double nb2 = cavity.n_background * cavity.n_background;
  const double strength = cavity.n_dipoles * cavity.dipole_moment * cavity.dipole_moment *
                          cavity.omega_b / (cavity.hbar * cavity.eps0 * cavity.mode_volume());
  if (strength == 0.0) return {nb2, 0.0};
  const std::complex<double> denom(cavity.omega_b * cavity.omega_b - omega * omega,
                                   -cavity.gamma * omega);
  return nb2 + strength / denom;
}

std::complex<double> transmission_amplitude(const CavityParams& cavity, double omega) {
  const std::complex<double> n = std::sqrt(lorentz_permittivity(cavity, omega));
  const std::complex<double> phi = omega * n * cavity.length / si::speed_of_light;
  const double r2 = cavity.mirror_r * cavity.mirror_r;
  const std::complex<double> i(0.0, 1.0);
  return (1.0 - r2) * std::exp(i * phi) / (1.0 - r2 * std::exp(2.0 * i * phi));
}

FrequencyGrid::FrequencyGrid(double start_, double stop_, int points_)
    : start(start_), stop(stop_), points(points_) {
  if (points < 3) throw ConfigError("FrequencyGrid: need at least 3 points");
  if (!(start > 0.0) || !(stop > start))
    throw ConfigError("FrequencyGrid: need 0 < start < stop");
}

TransmissionResult transmission_spectrum(const CavityParams& cavity, const FrequencyGrid& grid) {
  cavity.validate();
  TransmissionResult result;
  std::vector<double> freq(grid.points), trans(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    freq[i] = grid.at(i);
    trans[i] = std::norm(transmission_amplitude(cavity, freq[i]));
  }
  result.spectrum = SpectrumSeries(std::move(freq), std::move(trans));

  // Empty-cavity resonance nearest to omega_b.
  const double fsr = std::numbers::pi * si::speed_of_light / (cavity.n_background * cavity.length);
  const double order = std::round(cavity.omega_b / fsr);
  const double resonance = std::max(order, 1.0) * fsr;
  if (std::abs(resonance - cavity.omega_b) > 1e-6 * cavity.omega_b) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "empty-cavity resonance " << resonance << " rad/s is not tuned to omega_b "
        << cavity.omega_b << " rad/s";
    result.warnings.push_back(msg.str());
  }
  const double half_split = 0.5 * predicted_splitting(cavity) / cavity.n_background;
  if (grid.start > cavity.omega_b - half_split || grid.stop < cavity.omega_b + half_split)
    result.warnings.push_back("frequency grid does not bracket the expected resonances");
  return result;
}

double predicted_splitting(const CavityParams& cavity) {
  cavity.validate();
  return cavity.dipole_moment *
         std::sqrt(cavity.n_dipoles * cavity.omega_b /
                   (cavity.hbar * cavity.eps0 * cavity.area * cavity.length));
}

double matched_lambda(const CavityParams& cavity) {
  return 0.5 * predicted_splitting(cavity) / cavity.n_background;
}

ModelParams matched_model_params(const CavityParams& cavity) {
  // Only lambda enters the bilinear model; keep N when it is a representable count.
  const double n = cavity.n_dipoles;
  const bool integral = n >= 1.0 && n <= 2147483647.0 && std::floor(n) == n;
  const int n_atoms = integral ? static_cast<int>(n) : 1;
  return ModelParams::from_collective(1.0, 1.0, matched_lambda(cavity) / cavity.omega_b, n_atoms);
}

AgreementReport classical_quantum_agreement(const CavityParams& cavity,
                                            const FrequencyGrid& grid) {
  AgreementReport report;
  auto trans = transmission_spectrum(cavity, grid);
  report.warnings = trans.warnings;
  report.classical = peak_splitting(trans.spectrum);
  report.predicted = predicted_splitting(cavity);
  report.lambda = matched_lambda(cavity);
  const auto params = matched_model_params(cavity);
  if (params.lambda() > 0.0) report.quantum_splitting = normal_modes(params).splitting() * cavity.omega_b;
  if (report.classical.splitting && report.quantum_splitting > 0.0) {
    report.resolved = true;
    report.classical_splitting = *report.classical.splitting;
    report.deviation =
        std::abs(report.classical_splitting - report.quantum_splitting) / report.quantum_splitting;
  }
  return report;
}

}  // namespace polariton
