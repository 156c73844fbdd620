#include "polariton/witness.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "polariton/errors.hpp"
#include "polariton/spectral.hpp"

namespace polariton {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw ConfigError("DensityMatrix: matrix must be square and non-empty");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw NumericalError("DensityMatrix: not Hermitian");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) throw NumericalError("DensityMatrix: trace differs from 1", tr);
  // Symmetrize away the sub-1e-12 anti-Hermitian rounding.
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw NumericalError("DensityMatrix: negative eigenvalue", solver.eigenvalues().minCoeff());
}

double DensityMatrix::purity() const { return rho_.squaredNorm(); }

GaussianState::GaussianState(Eigen::Vector4d mean, Eigen::Matrix4d covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw NumericalError("GaussianState: covariance is not symmetric");
  if (uncertainty_margin() < -1e-10)
    throw NumericalError("GaussianState: covariance violates the uncertainty relation",
                         uncertainty_margin());
}

double GaussianState::global_purity() const { return 1.0 / (4.0 * std::sqrt(cov_.determinant())); }

double GaussianState::uncertainty_margin() const {
  Eigen::Matrix4cd m = cov_.cast<cplx>();
  const cplx half_i(0.0, 0.5);
  for (int k = 0; k < 2; ++k) {
    m(2 * k, 2 * k + 1) += half_i;
    m(2 * k + 1, 2 * k) -= half_i;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------

WitnessVerdict witness_evaluate(const ModelParams& params, const HermitianOperator& h,
                                const StateVector& state) {
  if (!params.on_resonance()) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "energy witness requires omega_a == omega_b (got " << params.omega_a() << " and "
        << params.omega_b() << "); the separable bound <H> >= 0 is only established on resonance";
    throw DomainError(msg.str());
  }
  const double value = expectation(h, state);
  return {value, 0.0, value < -kWitnessTolerance ? Verdict::entangled : Verdict::inconclusive};
}

double coherent_product_energy(const ModelParams& params, std::complex<double> alpha,
                               std::complex<double> beta) {
  return params.omega_a() * std::norm(alpha) + params.omega_b() * std::norm(beta) +
         4.0 * params.lambda() * alpha.real() * beta.real();
}

double squeezed_product_energy(const ModelParams& params, std::complex<double> alpha, double r_a,
                               std::complex<double> beta, double r_b) {
  const double sa = std::sinh(r_a), sb = std::sinh(r_b);
  return coherent_product_energy(params, alpha, beta) + params.omega_a() * sa * sa +
         params.omega_b() * sb * sb;
}

SeparableScanResult separable_bound_scan(const ModelParams& params,
                                         const SeparableScanGrid& grid) {
  params.require_stable();
  if (grid.radial_points < 2 || grid.phase_points < 2 || !(grid.radius > 0.0))
    throw ConfigError("separable_bound_scan: grid needs >= 2 radial and phase points");
  std::vector<std::complex<double>> points;
  for (int i = 0; i < grid.radial_points; ++i) {
    const double r = grid.radius * i / (grid.radial_points - 1);
    for (int k = 0; k < grid.phase_points; ++k)
      points.push_back(std::polar(r, 2.0 * std::numbers::pi * k / grid.phase_points));
  }
  SeparableScanResult best{coherent_product_energy(params, 0.0, 0.0), 0.0, 0.0};
  for (const auto& a : points)
    for (const auto& b : points) {
      const double e = coherent_product_energy(params, a, b);
      if (e < best.minimum) best = {e, a, b};
    }
  return best;
}

DensityMatrix reduced_density(const StateVector& state, const HilbertSpec& spec, Subsystem keep) {
  if (state.dim() != spec.dim())
    throw ConfigError("reduced_density: state dimension does not match the Hilbert spec");
  // Row n, column k: photon-major ordering.
  const Eigen::MatrixXcd psi =
      Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          state.amplitudes().data(), spec.photon_dim(), spec.matter_dim);
  if (keep == Subsystem::photon) return DensityMatrix(psi * psi.adjoint());
  return DensityMatrix(psi.transpose() * psi.conjugate());
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - rho.purity(); }

double linear_entropy_predicted(const ModelParams& params) {
  if (!params.on_resonance())
    throw DomainError("linear_entropy_predicted: the closed form assumes omega_a == omega_b");
  const double ratio = params.lambda() / params.omega_a();
  if (!(ratio < 1.0))
    throw DomainError("linear_entropy_predicted: the closed form needs lambda < omega");
  return ratio * ratio;
}

GaussianState gaussian_ground_state(const ModelParams& params) {
  const auto modes = normal_modes(params);
  const Eigen::Matrix2d& r = modes.mode_matrix;
  const Eigen::Vector2d omega(modes.omega_minus, modes.omega_plus);
  const Eigen::Matrix2d q_cov = r * (0.5 * omega.cwiseInverse()).asDiagonal() * r.transpose();
  const Eigen::Matrix2d p_cov = r * (0.5 * omega).asDiagonal() * r.transpose();
  const Eigen::Vector2d w(params.omega_a(), params.omega_b());

  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double s = std::sqrt(w[i] * w[j]);
      cov(2 * i, 2 * j) = s * q_cov(i, j);
      cov(2 * i + 1, 2 * j + 1) = p_cov(i, j) / s;
    }
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(Eigen::Vector4d::Zero(), cov);
}

double gaussian_linear_entropy(const GaussianState& state, Subsystem keep) {
  const int o = keep == Subsystem::photon ? 0 : 2;
  const double det = state.covariance().block<2, 2>(o, o).determinant();
  return 1.0 - 1.0 / (2.0 * std::sqrt(det));
}

double thermal_occupation(double omega, double kT) {
  if (!(omega > 0.0)) throw ConfigError("thermal_occupation: omega must be positive");
  if (kT < 0.0) throw ConfigError("thermal_occupation: temperature must be non-negative");
  if (kT == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / kT);
}

}  // namespace polariton
