#pragma once

#include <complex>
#include <string>
#include <vector>

#include "polariton/model.hpp"
#include "polariton/spectrum.hpp"

namespace polariton {

namespace si {
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double hbar = 1.054571817e-34;                // J s
}  // namespace si

/// Fabry-Perot cavity of length L_c filled with N Lorentz dipoles (SI units).
struct CavityParams {
  double length;                 // L_c [m]
  double mirror_r;               // amplitude reflectivity, 0 < r < 1
  double n_background = 1.0;     // n_b
  double area;                   // mode cross-section A [m^2]
  double n_dipoles;              // N
  double dipole_moment;          // d [C m]
  double omega_b;                // dipole resonance [rad/s]
  double gamma = 0.0;            // damping [rad/s]
  double eps0 = si::vacuum_permittivity;
  double hbar = si::hbar;

  /// Throws ConfigError when an invariant fails.
  void validate() const;
  double mode_volume() const { return area * length; }
};

/// Length whose empty-cavity resonance of longitudinal order q sits at omega.
double tuned_length(double omega, double n_background, int order = 1);

/// Coefficient finesse pi sqrt(R) / (1 - R), R = r^2.
double finesse(double mirror_r);
double mirror_r_for_finesse(double finesse);

/// eps(w) = n_b^2 + (N d^2 w_b / (hbar eps0 A L_c)) / (w_b^2 - w^2 - i gamma w).
std::complex<double> lorentz_permittivity(const CavityParams& cavity, double omega);

/// Airy amplitude for one pass through the loaded cavity.
std::complex<double> transmission_amplitude(const CavityParams& cavity, double omega);

struct FrequencyGrid {
  double start;
  double stop;
  int points;

  FrequencyGrid(double start, double stop, int points);
  double at(int i) const { return start + (stop - start) * i / (points - 1); }
  double step() const { return (stop - start) / (points - 1); }
};

struct TransmissionResult {
  SpectrumSeries spectrum;
  std::vector<std::string> warnings;
};

/// T(w) = |t^2 e^{i phi} / (1 - r^2 e^{2 i phi})|^2, phi = w sqrt(eps) L_c / c.
TransmissionResult transmission_spectrum(const CavityParams& cavity, const FrequencyGrid& grid);

/// d sqrt(N w_b / (hbar eps0 A L_c)); the printed closed form when A = hbar = 1.
double predicted_splitting(const CavityParams& cavity);

/// Collective coupling lambda [rad/s] matched to the microscopic dipole parameters.
double matched_lambda(const CavityParams& cavity);

/// Dimensionless bilinear-model parameters (frequencies in units of omega_b).
ModelParams matched_model_params(const CavityParams& cavity);

struct AgreementReport {
  PeakReport classical;
  double classical_splitting = 0.0;  // rad/s; 0 when not split
  double quantum_splitting = 0.0;    // (Omega+ - Omega-) [rad/s]
  double predicted = 0.0;            // closed form [rad/s]
  double lambda = 0.0;               // rad/s
  double deviation = 0.0;            // |classical - quantum| / quantum
  bool resolved = false;
  std::vector<std::string> warnings;
};

AgreementReport classical_quantum_agreement(const CavityParams& cavity, const FrequencyGrid& grid);

}  // namespace polariton
