#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace polariton {

using cplx = std::complex<double>;

/// Physical parameters of the cavity + dipole ensemble, in units with hbar = 1.
class ModelParams {
 public:
  ModelParams(double omega_a, double omega_b, double g, int n_atoms);

  /// Build parameters from a collective coupling lambda = g*sqrt(N).
  static ModelParams from_collective(double omega_a, double omega_b, double lambda,
                                     int n_atoms = 1);

  double omega_a() const { return omega_a_; }
  double omega_b() const { return omega_b_; }
  double g() const { return g_; }
  int n_atoms() const { return n_atoms_; }

  /// Collective coupling g*sqrt(N).
  double lambda() const { return lambda_; }

  bool on_resonance(double rel_tol = 1e-12) const;

  /// Normal-phase condition 4*lambda^2 < omega_a*omega_b.
  bool is_stable() const;

  /// Throws DomainError naming the threshold if the bilinear model is unstable.
  void require_stable() const;

 private:
  double omega_a_;
  double omega_b_;
  double g_;
  int n_atoms_;
  double lambda_;
};

/// Truncated product space: photon Fock levels 0..photon_cutoff times a
/// matter factor of dimension matter_dim. Ordering is photon-major:
/// index = n * matter_dim + k.
struct HilbertSpec {
  int photon_cutoff = 1;
  int matter_dim = 2;

  HilbertSpec() = default;
  HilbertSpec(int photon_cutoff, int matter_dim);

  int photon_dim() const { return photon_cutoff + 1; }
  int dim() const { return photon_dim() * matter_dim; }
  int index(int n, int k) const { return n * matter_dim + k; }

  /// Maximal Dicke ladder (matter_dim = N + 1).
  static HilbertSpec dicke(int photon_cutoff, int n_atoms);
  /// Two oscillators with the same number of retained levels.
  static HilbertSpec symmetric(int cutoff);
};

/// Sparse Hermitian matrix. Only the upper triangle (row <= col) is stored,
/// sorted row-major, with no explicit zeros; the lower triangle is the implied
/// conjugate transpose.
class HermitianOperator {
 public:
  struct Entry {
    int row;
    int col;
    cplx value;
  };

  /// Validates bounds, row <= col, real diagonal; merges duplicates and
  /// drops zeros.
  HermitianOperator(int dim, std::vector<Entry> upper);

  int dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Element (row, col) of the full matrix.
  cplx at(int row, int col) const;

  bool is_real() const;
  /// Max absolute row sum; bounds the spectral norm.
  double norm_bound() const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::SparseMatrix<cplx> to_sparse() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

 private:
  int dim_;
  std::vector<Entry> entries_;
};

/// Accumulates matrix elements. Each add() registers the pair (row, col) and
/// its conjugate mirror, so a Hermitian term is added once, not twice.
class OperatorBuilder {
 public:
  explicit OperatorBuilder(int dim) : dim_(dim) {}

  void add(int row, int col, cplx value);
  HermitianOperator build() &&;

 private:
  int dim_;
  std::vector<HermitianOperator::Entry> entries_;
};

/// Normalized ket.
class StateVector {
 public:
  /// Throws ConfigError unless ||amplitudes|| = 1 within 1e-12.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(Eigen::VectorXcd amplitudes);
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amp_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  cplx operator[](int i) const { return amp_[i]; }

 private:
  Eigen::VectorXcd amp_;
};

// Builders. All energies are measured from the uncoupled vacuum.

/// H = w_a a'a + w_b (J_z + j) + g (a' + a)(J+ + J-) on |n> x |j, m>, j = N/2.
HermitianOperator build_dicke_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// H = w_a a'a + w_b b'b + lambda (a' + a)(b' + b) with truncated oscillators.
HermitianOperator build_bilinear_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// Rotating-wave variant: g (a' J- + a J+). Conserves n + m + j.
HermitianOperator build_jc_rwa_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// Photon number plus matter excitation (n + k), diagonal.
HermitianOperator excitation_number_operator(const HilbertSpec& spec);

/// <psi|H|psi>. Throws on dimension mismatch or a residual imaginary part > 1e-12.
double expectation(const HermitianOperator& op, const StateVector& state);

enum class ModelKind { dicke, bilinear, jc_rwa };

HermitianOperator build_hamiltonian(ModelKind kind, const ModelParams& params,
                                    const HilbertSpec& spec);

}  // namespace polariton
