#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polariton/errors.hpp"
#include "polariton/spectral.hpp"

using namespace polariton;

TEST_CASE("eigendecompose: diagonal matrix") {
  const HermitianOperator h(4, {{0, 0, 3.0}, {1, 1, -1.0}, {2, 2, 2.0}, {3, 3, 0.5}});
  const auto dec = eigendecompose(h);
  CHECK(dec.eigenvalues[0] == -1.0);
  CHECK(dec.eigenvalues[1] == 0.5);
  CHECK(dec.eigenvalues[2] == 2.0);
  CHECK(dec.eigenvalues[3] == 3.0);
  CHECK(std::abs(dec.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(dec.eigenvectors(3, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eigendecompose: 2x2 coupling") {
  const HermitianOperator h(2, {{0, 0, 1.0}, {0, 1, 0.1}, {1, 1, 1.0}});
  const auto dec = eigendecompose(h);
  CHECK(dec.eigenvalues[0] == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(dec.eigenvalues[1] == doctest::Approx(1.1).epsilon(1e-14));
  CHECK_THROWS_AS(eigendecompose(HermitianOperator(1, {{0, 0, 1.0}})), ConfigError);
  EigenOptions bad;
  bad.count = 3;
  CHECK_THROWS_AS(eigendecompose(h, bad), ConfigError);
}

TEST_CASE("eigendecompose: residual and orthonormality contracts") {
  const auto h = build_dicke_hamiltonian(ModelParams(1, 1.05, 0.07, 6), HilbertSpec::dicke(10, 6));
  const auto dec = eigendecompose(h);
  for (int i = 1; i < dec.size(); ++i) CHECK(dec.eigenvalues[i] >= dec.eigenvalues[i - 1]);
  CHECK(dec.max_residual(h) <= 1e-9 * h.norm_bound());
  CHECK(dec.orthonormality_error() <= 1e-10);
}

TEST_CASE("exact diagonalization reproduces the normal modes") {
  for (double lambda : {0.05, 0.2, 0.3}) {
    const auto p = ModelParams::from_collective(1, 1, lambda);
    const auto modes = normal_modes(p);
    EigenOptions opt;
    opt.count = 3;
    const auto dec = eigendecompose(build_bilinear_hamiltonian(p, HilbertSpec::symmetric(18)), opt);
    CHECK(std::abs(dec.eigenvalues[1] - dec.eigenvalues[0] - modes.omega_minus) < 1e-6);
    CHECK(std::abs(dec.eigenvalues[2] - dec.eigenvalues[0] - modes.omega_plus) < 1e-6);
    CHECK(std::abs(dec.eigenvalues[0] - ground_energy_bilinear(p)) < 1e-8);
  }
}

TEST_CASE("ground_state examples") {
  const auto spec = HilbertSpec::symmetric(12);
  const auto vac = ground_state(build_bilinear_hamiltonian(ModelParams(1, 1, 0, 1), spec));
  CHECK(vac.energy == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(vac.state[0]) == doctest::Approx(1.0));

  const auto gs = ground_state(build_bilinear_hamiltonian(ModelParams::from_collective(1, 1, 0.2), spec));
  CHECK(gs.energy == doctest::Approx(-0.021093687069296707).epsilon(1e-9));

  const auto dicke = ground_state(build_dicke_hamiltonian(ModelParams(1, 1, 0.1, 1), HilbertSpec::dicke(8, 1)));
  CHECK(dicke.energy < 0.0);
}

TEST_CASE("normal_modes") {
  const auto free = normal_modes(ModelParams(1, 1, 0, 1));
  CHECK(free.omega_minus == doctest::Approx(1.0));
  CHECK(free.omega_plus == doctest::Approx(1.0));

  const auto res = normal_modes(ModelParams::from_collective(1, 1, 0.2));
  CHECK(res.omega_plus == doctest::Approx(1.1832159566199232).epsilon(1e-14));
  CHECK(res.omega_minus == doctest::Approx(0.7745966692414834).epsilon(1e-14));
  CHECK(std::abs(res.mode_matrix.determinant()) == doctest::Approx(1.0));

  const auto det = normal_modes(ModelParams::from_collective(1, 1.2, 0.1));
  const auto [lo, hi] = oracle::sym2x2(1.0, 2 * 0.1 * std::sqrt(1.2), 1.44);
  CHECK(det.omega_minus == doctest::Approx(std::sqrt(lo)).epsilon(1e-14));
  CHECK(det.omega_plus == doctest::Approx(std::sqrt(hi)).epsilon(1e-14));
  CHECK(det.splitting() > 0.0);

  CHECK_THROWS_AS(normal_modes(ModelParams::from_collective(1, 1, 0.5)), DomainError);
}

TEST_CASE("ground_energy_bilinear") {
  CHECK(ground_energy_bilinear(ModelParams(1, 1, 0, 1)) == 0.0);
  CHECK(ground_energy_bilinear(ModelParams::from_collective(1, 1, 0.2)) ==
        doctest::Approx(-0.021093687069296707).epsilon(1e-13));
  const double small = ground_energy_bilinear(ModelParams::from_collective(1, 1, 0.05));
  CHECK(std::abs(small / -0.00125 - 1.0) < 0.05);
  // Strictly lowered by any coupling; monotone in lambda.
  double prev = 0.0;
  for (int i = 1; i <= 24; ++i) {
    const double e = ground_energy_bilinear(ModelParams::from_collective(1, 1, 0.02 * i));
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("cutoff_convergence") {
  std::vector<HilbertSpec> ladder;
  for (int c : {4, 6, 8, 10, 12}) ladder.push_back(HilbertSpec::symmetric(c));

  const auto zero = cutoff_convergence(ModelKind::bilinear, ModelParams(1, 1, 0, 1), ladder);
  for (double d : zero.deltas) CHECK(d == 0.0);
  CHECK(zero.converged);

  const auto r = cutoff_convergence(ModelKind::bilinear, ModelParams::from_collective(1, 1, 0.2), ladder);
  REQUIRE(r.deltas.size() == 4);
  for (std::size_t i = 1; i < r.deltas.size(); ++i) CHECK(r.deltas[i] < r.deltas[i - 1]);
  CHECK(r.final_delta() < 1e-10);
  CHECK(r.converged);

  const auto near = cutoff_convergence(ModelKind::bilinear, ModelParams::from_collective(1, 1, 0.45), ladder);
  CHECK(near.values.size() == 5);
  CHECK(near.final_delta() > r.final_delta());
  CHECK_FALSE(near.converged);

  CHECK_THROWS_AS(cutoff_convergence(ModelKind::bilinear, ModelParams(1, 1, 0, 1), {ladder[0]}),
                  ConfigError);
  CHECK_THROWS_AS(cutoff_convergence(ModelKind::bilinear, ModelParams(1, 1, 0, 1),
                                     {ladder[2], ladder[1]}),
                  ConfigError);
}

TEST_CASE("Lanczos and dense paths agree") {
  EigenOptions dense, krylov;
  dense.count = krylov.count = 6;
  dense.method = EigenMethod::dense;
  krylov.method = EigenMethod::lanczos;

  const auto bil = build_bilinear_hamiltonian(ModelParams::from_collective(1, 1, 0.25),
                                              HilbertSpec::symmetric(20));
  const auto d = eigendecompose(bil, dense);
  const auto k = eigendecompose(bil, krylov);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(d.eigenvalues[i] - k.eigenvalues[i]) < 1e-8);
  CHECK(k.max_residual(bil) <= 1e-9 * bil.norm_bound());
  CHECK(k.orthonormality_error() <= 1e-10);

  // Complex Hermitian sparse matrix.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  OperatorBuilder b(300);
  for (int i = 0; i < 300; ++i) {
    b.add(i, i, 0.01 * i);
    for (int j : {i + 1, i + 7, i + 31})
      if (j < 300) b.add(i, j, cplx(normal(rng), normal(rng)) * 0.1);
  }
  const auto h = std::move(b).build();
  const auto dc = eigendecompose(h, dense);
  const auto kc = eigendecompose(h, krylov);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(dc.eigenvalues[i] - kc.eigenvalues[i]) < 1e-8);
}

TEST_CASE("Lanczos handles block-diagonal operators and is deterministic") {
  const auto jc = build_jc_rwa_hamiltonian(ModelParams(1, 1.02, 0.05, 8), HilbertSpec::dicke(12, 8));
  EigenOptions krylov;
  krylov.count = 4;
  krylov.method = EigenMethod::lanczos;
  const auto a = eigendecompose(jc, krylov);
  const auto b = eigendecompose(jc, krylov);
  CHECK(a.eigenvalues == b.eigenvalues);
  EigenOptions dense = krylov;
  dense.method = EigenMethod::dense;
  const auto d = eigendecompose(jc, dense);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(a.eigenvalues[i] - d.eigenvalues[i]) < 1e-8);

  EigenOptions capped = krylov;
  capped.max_iterations = 5;
  capped.tolerance = 1e-16;
  try {
    eigendecompose(jc, capped);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("automatic path switches to Lanczos above the dense limit") {
  const auto p = ModelParams::from_collective(1, 1, 0.2);
  const HilbertSpec spec(71, 72);  // 5184 > 4096
  REQUIRE(spec.dim() > kDenseLimit);
  const auto gs = ground_state(build_bilinear_hamiltonian(p, spec));
  CHECK(std::abs(gs.energy - ground_energy_bilinear(p)) < 1e-8);
  EigenOptions no_count;
  CHECK_THROWS_AS(eigendecompose(build_bilinear_hamiltonian(p, spec), no_count), ConfigError);
}

TEST_CASE("JC single-excitation splitting scales as sqrt(N)") {
  std::vector<double> n, split;
  for (int k : {1, 2, 4, 8, 16, 32, 64}) {
    const auto [lo, hi] = jc_single_excitation_energies(ModelParams(1, 1, 0.01, k));
    CHECK(hi - lo == doctest::Approx(2 * 0.01 * std::sqrt(double(k))).epsilon(1e-12));
    n.push_back(k);
    split.push_back(hi - lo);
  }
  CHECK(loglog_slope(n, split) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(loglog_slope({1.0, -2.0}, {1.0, 2.0}), ConfigError);
}
