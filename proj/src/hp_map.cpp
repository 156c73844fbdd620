#include "polariton/hp_map.hpp"

#include <algorithm>
#include <cmath>

#include "polariton/errors.hpp"
#include "polariton/spectral.hpp"

namespace polariton {

SpinRep SpinRep::from_twice(int two_j) {
  if (two_j < 1) throw ConfigError("SpinRep: 2j must be a positive integer");
  return SpinRep(two_j);
}

SpinMatrices hp_operators(const SpinRep& rep) {
  const int d = rep.dim();
  const int two_j = rep.two_j();
  SpinMatrices ops{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                   Eigen::MatrixXd::Zero(d, d)};
  for (int n = 0; n < d; ++n) {
    ops.j_z(n, n) = rep.j() - n;
    if (n + 1 < d) {
      // sqrt(2j) * sqrt(1 - n/2j) * sqrt(n+1): b takes |n+1> to |n>, then the
      // root factor acts on level n. The radicands are combined first,
      // (2j - n)(n + 1), so each element carries a single rounding.
      const long radicand = static_cast<long>(std::max(0, two_j - n)) * (n + 1);
      ops.j_plus(n, n + 1) = std::sqrt(static_cast<double>(radicand));
    }
  }
  ops.j_minus = ops.j_plus.transpose();
  return ops;
}

SpinMatrices ladder_operators(const SpinRep& rep) {
  const int d = rep.dim();
  const double j = rep.j();
  SpinMatrices ops{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                   Eigen::MatrixXd::Zero(d, d)};
  for (int n = 0; n < d; ++n) {
    const double m = j - n;
    ops.j_z(n, n) = m;
    // J+|j,m> lands on m+1, i.e. index n-1.
    if (n > 0) ops.j_plus(n - 1, n) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  ops.j_minus = ops.j_plus.transpose();
  return ops;
}

double hp_exactness_error(const SpinRep& rep) {
  const auto hp = hp_operators(rep);
  const auto ref = ladder_operators(rep);
  return std::max({(hp.j_plus - ref.j_plus).cwiseAbs().maxCoeff(),
                   (hp.j_minus - ref.j_minus).cwiseAbs().maxCoeff(),
                   (hp.j_z - ref.j_z).cwiseAbs().maxCoeff()});
}

double commutator_residual(const SpinMatrices& ops) {
  // Extended precision, so the residual measures the stored matrices rather
  // than the rounding of the products.
  using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixL jp = ops.j_plus.cast<long double>();
  const MatrixL jm = ops.j_minus.cast<long double>();
  const MatrixL jz = ops.j_z.cast<long double>();
  auto comm = [](const MatrixL& a, const MatrixL& b) -> MatrixL { return a * b - b * a; };
  const long double worst =
      std::max({(comm(jz, jp) - jp).cwiseAbs().maxCoeff(),
                (comm(jz, jm) + jm).cwiseAbs().maxCoeff(),
                (comm(jp, jm) - 2.0L * jz).cwiseAbs().maxCoeff()});
  return static_cast<double>(worst);
}

double linearization_error(const SpinRep& rep, int n_low) {
  if (n_low < 0 || n_low > rep.two_j())
    throw ConfigError("linearization_error: n_low must lie in [0, 2j]");
  const auto hp = hp_operators(rep);
  const double scale = std::sqrt(static_cast<double>(rep.two_j()));
  double worst = 0.0;
  // Element |n> -> |n-1>, retained when n-1 <= n_low.
  for (int n = 1; n <= std::min(n_low + 1, rep.two_j()); ++n) {
    const double linear = scale * std::sqrt(static_cast<double>(n));
    worst = std::max(worst, std::abs(hp.j_plus(n - 1, n) - linear) / linear);
  }
  return worst;
}

std::vector<GapComparison> dicke_vs_bilinear_gap(const ModelParams& params,
                                                 const std::vector<int>& n_sweep,
                                                 const GapSweepOptions& options) {
  const double lambda = params.lambda();
  EigenOptions opt;
  opt.count = 2;
  opt.vectors = false;

  const auto bilinear = ModelParams::from_collective(params.omega_a(), params.omega_b(), lambda);
  const auto eb = eigendecompose(
      build_bilinear_hamiltonian(bilinear, HilbertSpec(options.photon_cutoff,
                                                       options.bilinear_matter_cutoff + 1)),
      opt);
  const double bilinear_gap = eb.eigenvalues[1] - eb.eigenvalues[0];

  std::vector<GapComparison> out;
  for (int n : n_sweep) {
    const auto p = ModelParams::from_collective(params.omega_a(), params.omega_b(), lambda, n);
    p.require_stable();
    const auto ed = eigendecompose(
        build_dicke_hamiltonian(p, HilbertSpec::dicke(options.photon_cutoff, n)), opt);
    const double gap = ed.eigenvalues[1] - ed.eigenvalues[0];
    out.push_back({n, gap, bilinear_gap, std::abs(gap - bilinear_gap) / bilinear_gap});
  }
  return out;
}

}  // namespace polariton
