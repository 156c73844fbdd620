#pragma once

#include <complex>

#include "polariton/model.hpp"

namespace polariton {

/// Reduced state; validated on construction.
class DensityMatrix {
 public:
  /// Requires Hermiticity to 1e-12, unit trace within 1e-10 and
  /// eigenvalues >= -1e-10.
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  double purity() const;

 private:
  Eigen::MatrixXcd rho_;
};

/// Two-mode Gaussian state in quadratures (x_a, p_a, x_b, p_b) with
/// x = (a + a')/sqrt2; the vacuum covariance is identity/2.
class GaussianState {
 public:
  GaussianState(Eigen::Vector4d mean, Eigen::Matrix4d covariance);

  const Eigen::Vector4d& mean() const { return mean_; }
  const Eigen::Matrix4d& covariance() const { return cov_; }

  /// 1 / (4 sqrt(det covariance))
  double global_purity() const;
  /// Smallest eigenvalue of covariance + (i/2) * symplectic form.
  double uncertainty_margin() const;

 private:
  Eigen::Vector4d mean_;
  Eigen::Matrix4d cov_;
};

enum class Subsystem { photon, matter };

enum class Verdict { entangled, inconclusive };

struct WitnessVerdict {
  double value;
  double separable_floor = 0.0;
  Verdict verdict;
};

inline constexpr double kWitnessTolerance = 1e-9;

/// Energy witness: separable states satisfy <H> >= 0 on resonance.
/// Throws DomainError for detuned parameters.
WitnessVerdict witness_evaluate(const ModelParams& params, const HermitianOperator& h,
                                const StateVector& state);

struct SeparableScanGrid {
  double radius = 2.0;
  int radial_points = 41;
  int phase_points = 16;
};

struct SeparableScanResult {
  double minimum;
  std::complex<double> alpha;
  std::complex<double> beta;
};

/// <H> for the product coherent state |alpha> x |beta>.
double coherent_product_energy(const ModelParams& params, std::complex<double> alpha,
                               std::complex<double> beta);

/// <H> for a product of displaced squeezed vacua (real squeezing r along x).
double squeezed_product_energy(const ModelParams& params, std::complex<double> alpha, double r_a,
                               std::complex<double> beta, double r_b);

/// Minimum of <H> over a polar grid of coherent product states.
SeparableScanResult separable_bound_scan(const ModelParams& params,
                                         const SeparableScanGrid& grid = {});

DensityMatrix reduced_density(const StateVector& state, const HilbertSpec& spec, Subsystem keep);

double linear_entropy(const DensityMatrix& rho);

/// Closed-form (lambda/omega)^2 as published. Requires resonance and lambda < omega.
double linear_entropy_predicted(const ModelParams& params);

/// Ground state of the bilinear model from its normal modes.
GaussianState gaussian_ground_state(const ModelParams& params);

/// 1 - 1/(2 sqrt(det sigma_keep)).
double gaussian_linear_entropy(const GaussianState& state, Subsystem keep);

/// Bose-Einstein occupation 1/(exp(omega/kT) - 1); 0 at kT = 0.
double thermal_occupation(double omega, double kT);

}  // namespace polariton
