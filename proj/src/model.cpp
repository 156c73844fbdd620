#include "polariton/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polariton/errors.hpp"

namespace polariton {

ModelParams::ModelParams(double omega_a, double omega_b, double g, int n_atoms)
    : omega_a_(omega_a), omega_b_(omega_b), g_(g), n_atoms_(n_atoms) {
  if (!(omega_a > 0.0) || !(omega_b > 0.0))
    throw ConfigError("ModelParams: frequencies must be positive");
  if (!(g >= 0.0)) throw ConfigError("ModelParams: coupling g must be non-negative");
  if (n_atoms < 1) throw ConfigError("ModelParams: n_atoms must be >= 1");
  lambda_ = g_ * std::sqrt(static_cast<double>(n_atoms_));
}

ModelParams ModelParams::from_collective(double omega_a, double omega_b, double lambda,
                                         int n_atoms) {
  if (n_atoms < 1) throw ConfigError("ModelParams: n_atoms must be >= 1");
  return ModelParams(omega_a, omega_b, lambda / std::sqrt(static_cast<double>(n_atoms)),
                     n_atoms);
}

bool ModelParams::on_resonance(double rel_tol) const {
  return std::abs(omega_a_ - omega_b_) <= rel_tol * std::max(omega_a_, omega_b_);
}

bool ModelParams::is_stable() const { return 4.0 * lambda_ * lambda_ < omega_a_ * omega_b_; }

void ModelParams::require_stable() const {
  if (is_stable()) return;
  std::ostringstream msg;
  msg.precision(12);
  msg << "unstable bilinear model: 4*lambda^2 = " << 4.0 * lambda_ * lambda_
      << " >= omega_a*omega_b = " << omega_a_ * omega_b_
      << " (normal-phase threshold lambda < sqrt(omega_a*omega_b)/2 = "
      << 0.5 * std::sqrt(omega_a_ * omega_b_) << ")";
  throw DomainError(msg.str());
}

HilbertSpec::HilbertSpec(int photon_cutoff_, int matter_dim_)
    : photon_cutoff(photon_cutoff_), matter_dim(matter_dim_) {
  if (photon_cutoff < 1) throw ConfigError("HilbertSpec: photon_cutoff must be >= 1");
  if (matter_dim < 2) throw ConfigError("HilbertSpec: matter_dim must be >= 2");
}

HilbertSpec HilbertSpec::dicke(int photon_cutoff, int n_atoms) {
  return HilbertSpec(photon_cutoff, n_atoms + 1);
}

HilbertSpec HilbertSpec::symmetric(int cutoff) { return HilbertSpec(cutoff, cutoff + 1); }

// ---------------------------------------------------------------------------

HermitianOperator::HermitianOperator(int dim, std::vector<Entry> upper) : dim_(dim) {
  if (dim < 1) throw ConfigError("HermitianOperator: dimension must be positive");
  for (const auto& e : upper) {
    if (e.row < 0 || e.col < 0 || e.row >= dim || e.col >= dim)
      throw ConfigError("HermitianOperator: entry out of bounds");
    if (e.row > e.col) throw ConfigError("HermitianOperator: entry below the diagonal");
    if (e.row == e.col && e.value.imag() != 0.0)
      throw ConfigError("HermitianOperator: diagonal entries must be real");
  }
  std::sort(upper.begin(), upper.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : upper) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
      entries_.back().value += e.value;
    else
      entries_.push_back(e);
  }
  std::erase_if(entries_, [](const Entry& e) { return e.value == cplx(0.0, 0.0); });
}

cplx HermitianOperator::at(int row, int col) const {
  const bool mirrored = row > col;
  const int r = mirrored ? col : row;
  const int c = mirrored ? row : col;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                             [](const Entry& e, const std::pair<int, int>& key) {
                               return e.row != key.first ? e.row < key.first
                                                         : e.col < key.second;
                             });
  if (it == entries_.end() || it->row != r || it->col != c) return {0.0, 0.0};
  return mirrored ? std::conj(it->value) : it->value;
}

bool HermitianOperator::is_real() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.value.imag() == 0.0; });
}

double HermitianOperator::norm_bound() const {
  std::vector<double> rows(dim_, 0.0);
  for (const auto& e : entries_) {
    rows[e.row] += std::abs(e.value);
    if (e.row != e.col) rows[e.col] += std::abs(e.value);
  }
  return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

Eigen::MatrixXcd HermitianOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& e : entries_) {
    m(e.row, e.col) = e.value;
    m(e.col, e.row) = std::conj(e.value);
  }
  return m;
}

Eigen::SparseMatrix<cplx> HermitianOperator::to_sparse() const {
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(2 * entries_.size());
  for (const auto& e : entries_) {
    triplets.emplace_back(e.row, e.col, e.value);
    if (e.row != e.col) triplets.emplace_back(e.col, e.row, std::conj(e.value));
  }
  Eigen::SparseMatrix<cplx> m(dim_, dim_);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Eigen::VectorXcd HermitianOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != dim_) throw ConfigError("HermitianOperator::apply: dimension mismatch");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim_);
  for (const auto& e : entries_) {
    y[e.row] += e.value * x[e.col];
    if (e.row != e.col) y[e.col] += std::conj(e.value) * x[e.row];
  }
  return y;
}

void OperatorBuilder::add(int row, int col, cplx value) {
  if (row <= col)
    entries_.push_back({row, col, value});
  else
    entries_.push_back({col, row, std::conj(value)});
}

HermitianOperator OperatorBuilder::build() && {
  return HermitianOperator(dim_, std::move(entries_));
}

// ---------------------------------------------------------------------------

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw ConfigError("StateVector: empty");
  if (std::abs(amp_.norm() - 1.0) > 1e-12) throw ConfigError("StateVector: not normalized");
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw ConfigError("StateVector: cannot normalize a zero vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw ConfigError("StateVector::basis: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

// ---------------------------------------------------------------------------

namespace {

void check_dicke_spec(const ModelParams& params, const HilbertSpec& spec) {
  if (spec.matter_dim != params.n_atoms() + 1) {
    std::ostringstream msg;
    msg << "Dicke basis needs matter_dim = n_atoms + 1 = " << params.n_atoms() + 1
        << ", got " << spec.matter_dim;
    throw ConfigError(msg.str());
  }
}

// <j, m+1| J+ |j, m> with m = k - j.
double j_plus_element(double j, int k) {
  const double m = k - j;
  return std::sqrt(std::max(0.0, j * (j + 1.0) - m * (m + 1.0)));
}

void add_free_terms(OperatorBuilder& b, const ModelParams& p, const HilbertSpec& spec) {
  for (int n = 0; n <= spec.photon_cutoff; ++n)
    for (int k = 0; k < spec.matter_dim; ++k)
      b.add(spec.index(n, k), spec.index(n, k), p.omega_a() * n + p.omega_b() * k);
}

}  // namespace

HermitianOperator build_dicke_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
  check_dicke_spec(params, spec);
  const double j = 0.5 * params.n_atoms();
  OperatorBuilder b(spec.dim());
  add_free_terms(b, params, spec);
  if (params.g() != 0.0) {
    // a'J+ and a'J- ; their conjugates aJ- and aJ+ are implied.
    for (int n = 0; n < spec.photon_cutoff; ++n) {
      const double an = std::sqrt(n + 1.0);
      for (int k = 0; k < spec.matter_dim; ++k) {
        if (k + 1 < spec.matter_dim)
          b.add(spec.index(n + 1, k + 1), spec.index(n, k),
                params.g() * an * j_plus_element(j, k));
        if (k > 0)
          b.add(spec.index(n + 1, k - 1), spec.index(n, k),
                params.g() * an * j_plus_element(j, k - 1));
      }
    }
  }
  return std::move(b).build();
}

HermitianOperator build_bilinear_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
  params.require_stable();
  const double lambda = params.lambda();
  OperatorBuilder b(spec.dim());
  add_free_terms(b, params, spec);
  if (lambda != 0.0) {
    for (int n = 0; n < spec.photon_cutoff; ++n) {
      const double an = std::sqrt(n + 1.0);
      for (int k = 0; k < spec.matter_dim; ++k) {
        if (k + 1 < spec.matter_dim)
          b.add(spec.index(n + 1, k + 1), spec.index(n, k), lambda * an * std::sqrt(k + 1.0));
        if (k > 0)
          b.add(spec.index(n + 1, k - 1), spec.index(n, k), lambda * an * std::sqrt(double(k)));
      }
    }
  }
  return std::move(b).build();
}

HermitianOperator build_jc_rwa_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
  check_dicke_spec(params, spec);
  const double j = 0.5 * params.n_atoms();
  OperatorBuilder b(spec.dim());
  add_free_terms(b, params, spec);
  if (params.g() != 0.0) {
    // a'J- only; aJ+ is its conjugate.
    for (int n = 0; n < spec.photon_cutoff; ++n)
      for (int k = 1; k < spec.matter_dim; ++k)
        b.add(spec.index(n + 1, k - 1), spec.index(n, k),
              params.g() * std::sqrt(n + 1.0) * j_plus_element(j, k - 1));
  }
  return std::move(b).build();
}

HermitianOperator build_hamiltonian(ModelKind kind, const ModelParams& params,
                                    const HilbertSpec& spec) {
  switch (kind) {
    case ModelKind::dicke: return build_dicke_hamiltonian(params, spec);
    case ModelKind::bilinear: return build_bilinear_hamiltonian(params, spec);
    case ModelKind::jc_rwa: return build_jc_rwa_hamiltonian(params, spec);
  }
  throw ConfigError("unknown model kind");
}

HermitianOperator excitation_number_operator(const HilbertSpec& spec) {
  OperatorBuilder b(spec.dim());
  for (int n = 0; n <= spec.photon_cutoff; ++n)
    for (int k = 0; k < spec.matter_dim; ++k) b.add(spec.index(n, k), spec.index(n, k), n + k);
  return std::move(b).build();
}

double expectation(const HermitianOperator& op, const StateVector& state) {
  if (op.dim() != state.dim()) throw ConfigError("expectation: dimension mismatch");
  if (std::abs(state.amplitudes().norm() - 1.0) > 1e-12)
    throw ConfigError("expectation: state is not normalized");
  const cplx value = state.amplitudes().dot(op.apply(state.amplitudes()));
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
    throw NumericalError("expectation: imaginary residue exceeds 1e-12", std::abs(value.imag()));
  return value.real();
}

}  // namespace polariton
