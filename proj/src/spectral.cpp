#include "polariton/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "polariton/errors.hpp"

namespace polariton {

double EigenDecomposition::max_residual(const HermitianOperator& h) const {
  double worst = 0.0;
  for (int i = 0; i < eigenvectors.cols(); ++i) {
    const Eigen::VectorXcd v = eigenvectors.col(i);
    worst = std::max(worst, (h.apply(v) - eigenvalues[i] * v).norm());
  }
  return worst;
}

double EigenDecomposition::orthonormality_error() const {
  if (eigenvectors.cols() == 0) return 0.0;
  const Eigen::MatrixXcd gram = eigenvectors.adjoint() * eigenvectors;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

namespace {

EigenDecomposition dense_decompose(const HermitianOperator& h, int count, bool vectors) {
  EigenDecomposition out;
  const int mode = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (h.is_real()) {
    Eigen::MatrixXd m = h.to_dense().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, mode);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    out.eigenvalues = solver.eigenvalues().head(count);
    if (vectors) out.eigenvectors = solver.eigenvectors().leftCols(count).cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.to_dense(), mode);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    out.eigenvalues = solver.eigenvalues().head(count);
    if (vectors) out.eigenvectors = solver.eigenvectors().leftCols(count);
  }
  return out;
}

Eigen::VectorXcd random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v / v.norm();
}

// Gram-Schmidt twice against the first `used` columns of q.
void orthogonalize(Eigen::VectorXcd& v, const Eigen::MatrixXcd& q, int used) {
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXcd c = q.leftCols(used).adjoint() * v;
    v -= q.leftCols(used) * c;
  }
}

// Lanczos with full reorthogonalization. On breakdown the recursion
// restarts from a fresh random vector orthogonal to the basis, leaving a zero
// coupling in the tridiagonal matrix.
EigenDecomposition lanczos_decompose(const HermitianOperator& h, int count,
                                     const EigenOptions& opt) {
  const int dim = h.dim();
  const int cap = std::min(dim, std::max(opt.max_iterations, count + 1));
  const auto a = h.to_sparse();
  const double scale = std::max(h.norm_bound(), 1e-300);
  const double tol = opt.tolerance * scale;

  std::mt19937_64 rng(opt.seed);
  Eigen::MatrixXcd q(dim, cap);
  std::vector<double> alpha, beta;  // beta[i] couples i and i+1
  q.col(0) = random_unit(dim, rng);

  double achieved = std::numeric_limits<double>::infinity();
  for (int m = 0; m < cap; ++m) {
    Eigen::VectorXcd w = a * q.col(m);
    alpha.push_back(q.col(m).dot(w).real());
    orthogonalize(w, q, m + 1);
    double b = w.norm();

    const int size = m + 1;
    const bool check = size >= count && (size % 5 == 0 || size == cap || b < tol);
    if (check) {
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), size);
      Eigen::VectorXd off(std::max(size - 1, 0));
      for (int i = 0; i + 1 < size; ++i) off[i] = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
      // Ritz residual estimate: |b * last component|.
      achieved = 0.0;
      for (int i = 0; i < count; ++i)
        achieved = std::max(achieved, std::abs(b * tri.eigenvectors()(size - 1, i)));
      const bool exhausted = size == dim;
      if (achieved <= tol || exhausted) {
        EigenDecomposition out;
        out.eigenvalues = tri.eigenvalues().head(count);
        if (opt.vectors) {
          out.eigenvectors = q.leftCols(size) * tri.eigenvectors().leftCols(count).cast<cplx>();
          for (int i = 0; i < count; ++i) out.eigenvectors.col(i).normalize();
        }
        return out;
      }
    }
    if (m + 1 == cap) break;
    if (b < tol) {
      // Invariant subspace reached; continue in its orthogonal complement.
      w = random_unit(dim, rng);
      orthogonalize(w, q, m + 1);
      b = w.norm();
      if (b < 1e-12) break;
      q.col(m + 1) = w / b;
      beta.push_back(0.0);
    } else {
      q.col(m + 1) = w / b;
      beta.push_back(b);
    }
  }
  std::ostringstream msg;
  msg << "Lanczos did not converge in " << cap << " iterations (residual " << achieved
      << ", target " << tol << ")";
  throw NumericalError(msg.str(), achieved);
}

}  // namespace

EigenDecomposition eigendecompose(const HermitianOperator& h, const EigenOptions& options) {
  const int dim = h.dim();
  if (dim < 2) throw ConfigError("eigendecompose: dimension must be >= 2");
  int count = dim;
  if (options.count) {
    if (*options.count < 1 || *options.count > dim)
      throw ConfigError("eigendecompose: requested count out of range");
    count = *options.count;
  }
  EigenMethod method = options.method;
  if (method == EigenMethod::automatic)
    method = dim <= kDenseLimit ? EigenMethod::dense : EigenMethod::lanczos;
  if (method == EigenMethod::lanczos) {
    if (!options.count) throw ConfigError("eigendecompose: Lanczos path needs a pair count");
    return lanczos_decompose(h, count, options);
  }
  return dense_decompose(h, count, options.vectors);
}

GroundState ground_state(const HermitianOperator& h) {
  EigenOptions opt;
  opt.count = 1;
  auto dec = eigendecompose(h, opt);
  Eigen::VectorXcd v = dec.eigenvectors.col(0);
  // Fix the global phase: largest component real positive.
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  v *= std::conj(v[imax]) / std::abs(v[imax]);
  return {dec.eigenvalues[0], StateVector::normalized(std::move(v))};
}

NormalModes normal_modes(const ModelParams& params) {
  params.require_stable();
  const double wa = params.omega_a(), wb = params.omega_b();
  const double c = 2.0 * params.lambda() * std::sqrt(wa * wb);
  Eigen::Matrix2d m;
  m << wa * wa, c, c, wb * wb;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(m);
  const Eigen::Vector2d ev = solver.eigenvalues();
  if (!(ev[0] > 0.0)) params.require_stable();  // rounding at the threshold
  NormalModes modes{std::sqrt(ev[0]), std::sqrt(ev[1]), solver.eigenvectors()};
  if (!(modes.omega_minus > 0.0))
    throw DomainError("normal_modes: lower branch frequency is not positive");
  return modes;
}

double ground_energy_bilinear(const ModelParams& params) {
  const auto modes = normal_modes(params);
  return 0.5 * (modes.omega_plus + modes.omega_minus) -
         0.5 * (params.omega_a() + params.omega_b());
}

ConvergenceReport cutoff_convergence(ModelKind kind, const ModelParams& params,
                                     const std::vector<HilbertSpec>& specs,
                                     Observable observable, double tolerance) {
  if (specs.size() < 2) throw ConfigError("cutoff_convergence: need at least two cutoffs");
  for (std::size_t i = 1; i < specs.size(); ++i)
    if (specs[i].photon_cutoff <= specs[i - 1].photon_cutoff ||
        specs[i].matter_dim < specs[i - 1].matter_dim)
      throw ConfigError("cutoff_convergence: cutoffs must be strictly increasing");

  ConvergenceReport report;
  report.specs = specs;
  report.tolerance = tolerance;
  EigenOptions opt;
  opt.count = observable == Observable::ground_energy ? 1 : 2;
  opt.vectors = false;
  for (const auto& spec : specs) {
    const auto dec = eigendecompose(build_hamiltonian(kind, params, spec), opt);
    report.values.push_back(observable == Observable::ground_energy
                                ? dec.eigenvalues[0]
                                : dec.eigenvalues[1] - dec.eigenvalues[0]);
  }
  for (std::size_t i = 1; i < report.values.size(); ++i)
    report.deltas.push_back(std::abs(report.values[i] - report.values[i - 1]));
  report.converged = report.final_delta() < tolerance;
  return report;
}

std::pair<double, double> jc_single_excitation_energies(const ModelParams& params) {
  const auto spec = HilbertSpec::dicke(1, params.n_atoms());
  const auto h = build_jc_rwa_hamiltonian(params, spec);
  // Single-excitation sector: n + k = 1.
  const int s0 = spec.index(1, 0), s1 = spec.index(0, 1);
  Eigen::Matrix2cd block;
  block << h.at(s0, s0), h.at(s0, s1), h.at(s1, s0), h.at(s1, s1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues()[0], solver.eigenvalues()[1]};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("loglog_slope: need two equally sized series of length >= 2");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ConfigError("loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ConfigError("loglog_slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace polariton
