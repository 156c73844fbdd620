#pragma once

#include <vector>

#include "polariton/model.hpp"

namespace polariton {

/// Spin representation with 2j a positive integer.
class SpinRep {
 public:
  /// From twice the spin, e.g. SpinRep::from_twice(1) is j = 1/2.
  static SpinRep from_twice(int two_j);
  static SpinRep from_atoms(int n_atoms) { return from_twice(n_atoms); }

  double j() const { return 0.5 * two_j_; }
  int two_j() const { return two_j_; }
  int dim() const { return two_j_ + 1; }

 private:
  explicit SpinRep(int two_j) : two_j_(two_j) {}
  int two_j_;
};

struct SpinMatrices {
  Eigen::MatrixXd j_plus;
  Eigen::MatrixXd j_minus;
  Eigen::MatrixXd j_z;
};

/// Holstein-Primakoff operators on the boson levels n = 0..2j:
/// J+ = sqrt(2j) sqrt(1 - b'b/2j) b, J- = J+', J_z = j - b'b.
/// The root factor is an exact diagonal (clamped to 0 at n = 2j).
SpinMatrices hp_operators(const SpinRep& rep);

/// Standard ladder matrices in the same ordering (index n <-> m = j - n).
SpinMatrices ladder_operators(const SpinRep& rep);

/// Max elementwise |HP - ladder| over J+, J-, J_z.
double hp_exactness_error(const SpinRep& rep);

/// Max of ||[J_z, J+] - J+||, ||[J_z, J-] + J-||, ||[J+, J-] - 2 J_z|| (elementwise max).
double commutator_residual(const SpinMatrices& ops);

/// Max relative deviation of J+ from its linearization sqrt(2j) b over the
/// elements that land in n <= n_low.
double linearization_error(const SpinRep& rep, int n_low);

struct GapComparison {
  int n_atoms;
  double dicke_gap;
  double bilinear_gap;
  double relative_error;
};

struct GapSweepOptions {
  int photon_cutoff = 14;
  int bilinear_matter_cutoff = 14;
};

/// First excitation gap of the finite Dicke model against the bilinear limit
/// at fixed collective coupling (g rescaled as lambda/sqrt(N)).
std::vector<GapComparison> dicke_vs_bilinear_gap(const ModelParams& params,
                                                 const std::vector<int>& n_sweep,
                                                 const GapSweepOptions& options = {});

}  // namespace polariton
