#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polariton/model.hpp"

namespace polariton {

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // one column per eigenvalue

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// max_i ||H v_i - e_i v_i||
  double max_residual(const HermitianOperator& h) const;
  /// max |V'V - 1|
  double orthonormality_error() const;
};

enum class EigenMethod { automatic, dense, lanczos };

struct EigenOptions {
  std::optional<int> count;  // lowest `count` pairs; all of them when empty
  EigenMethod method = EigenMethod::automatic;
  bool vectors = true;
  std::uint64_t seed = 20160501;
  int max_iterations = 800;
  double tolerance = 1e-11;  // relative to norm_bound()
};

/// Dense path up to this dimension, Lanczos above.
inline constexpr int kDenseLimit = 4096;

EigenDecomposition eigendecompose(const HermitianOperator& h, const EigenOptions& options = {});

struct GroundState {
  double energy;
  StateVector state;
};

GroundState ground_state(const HermitianOperator& h);

/// Polariton branches of the bilinear model.
struct NormalModes {
  double omega_minus;
  double omega_plus;
  /// Orthogonal transform from normal-mode to mass-weighted position
  /// coordinates: q = mode_matrix * Q; column 0 is the lower branch.
  Eigen::Matrix2d mode_matrix;

  double splitting() const { return omega_plus - omega_minus; }
};

NormalModes normal_modes(const ModelParams& params);

/// Exact ground energy of the bilinear model relative to the uncoupled vacuum.
double ground_energy_bilinear(const ModelParams& params);

enum class Observable { ground_energy, first_gap };

struct ConvergenceReport {
  std::vector<HilbertSpec> specs;
  std::vector<double> values;
  std::vector<double> deltas;  // |values[i] - values[i-1]|, size values-1
  double tolerance = 0.0;
  bool converged = false;

  double final_delta() const { return deltas.empty() ? 0.0 : deltas.back(); }
};

ConvergenceReport cutoff_convergence(ModelKind kind, const ModelParams& params,
                                     const std::vector<HilbertSpec>& specs,
                                     Observable observable = Observable::ground_energy,
                                     double tolerance = 1e-10);

/// Energies of the two single-excitation states of the JC-RWA model
/// (|1, m=-j> and |0, m=-j+1>), ascending. Exact for any N.
std::pair<double, double> jc_single_excitation_energies(const ModelParams& params);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace polariton
