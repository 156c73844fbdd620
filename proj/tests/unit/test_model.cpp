#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "polariton/errors.hpp"
#include "polariton/model.hpp"
#include "polariton/spectral.hpp"

using namespace polariton;

namespace {

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXd& b) {
  return (a - b.cast<cplx>()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}

}  // namespace

TEST_CASE("ModelParams validates and derives the collective coupling") {
  const ModelParams p(1.0, 1.2, 0.05, 16);
  CHECK(p.lambda() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(ModelParams(0.0, 1.0, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(ModelParams(1.0, -1.0, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.1, 1), ConfigError);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 0.1, 0), ConfigError);
  CHECK(ModelParams::from_collective(1, 1, 0.3, 9).g() == doctest::Approx(0.1));
}

TEST_CASE("HilbertSpec dimensions") {
  const HilbertSpec s(4, 3);
  CHECK(s.dim() == 15);
  CHECK(s.index(2, 1) == 7);
  CHECK_THROWS_AS(HilbertSpec(0, 3), ConfigError);
  CHECK_THROWS_AS(HilbertSpec(3, 1), ConfigError);
}

TEST_CASE("HermitianOperator stores a clean upper triangle") {
  OperatorBuilder b(3);
  b.add(0, 0, 1.0);
  b.add(2, 1, cplx(0.0, 2.0));  // stored as (1, 2, -2i)
  b.add(1, 2, cplx(0.0, -1.0));
  b.add(0, 1, 0.5);
  b.add(0, 1, -0.5);  // cancels
  const auto h = std::move(b).build();
  CHECK(h.entries().size() == 2);
  CHECK(h.at(1, 2) == cplx(0.0, -3.0));
  CHECK(h.at(2, 1) == cplx(0.0, 3.0));
  CHECK(h.at(0, 1) == cplx(0.0, 0.0));
  const auto dense = h.to_dense();
  CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(HermitianOperator(2, {{0, 0, cplx(1.0, 1.0)}}), ConfigError);
  CHECK_THROWS_AS(HermitianOperator(2, {{1, 0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(HermitianOperator(2, {{0, 2, 1.0}}), ConfigError);
}

TEST_CASE("build_dicke_hamiltonian: uncoupled atom and photon") {
  const auto h = build_dicke_hamiltonian(ModelParams(1, 1, 0.0, 1), HilbertSpec::dicke(1, 1));
  const auto d = h.to_dense();
  CHECK(d.rows() == 4);
  CHECK(d(0, 0).real() == 0.0);
  CHECK(d(1, 1).real() == 1.0);
  CHECK(d(2, 2).real() == 1.0);
  CHECK(d(3, 3).real() == 2.0);
  CHECK(h.entries().size() == 3);  // no explicit zero at (0,0)
}

TEST_CASE("build_dicke_hamiltonian: counter-rotating elements for N=1") {
  const auto h = build_dicke_hamiltonian(ModelParams(1, 1, 0.1, 1), HilbertSpec::dicke(1, 1));
  const HilbertSpec s = HilbertSpec::dicke(1, 1);
  // |0,up> <-> |1,down| and |0,down> <-> |1,up>
  CHECK(std::abs(h.at(s.index(0, 1), s.index(1, 0))) == doctest::Approx(0.1));
  CHECK(std::abs(h.at(s.index(0, 0), s.index(1, 1))) == doctest::Approx(0.1));
  CHECK(std::abs(h.at(s.index(0, 0), s.index(0, 1))) == 0.0);
}

TEST_CASE("build_dicke_hamiltonian: matter block follows j = N/2") {
  const ModelParams p(1, 1, 0.1, 2);
  const auto h = build_dicke_hamiltonian(p, HilbertSpec::dicke(3, 2));
  CHECK(h.dim() == 4 * 3);
  CHECK_THROWS_AS(build_dicke_hamiltonian(p, HilbertSpec(3, 2)), ConfigError);
  CHECK_THROWS_AS(build_jc_rwa_hamiltonian(p, HilbertSpec(3, 4)), ConfigError);
}

TEST_CASE("builders agree with dense Kronecker oracles") {
  for (int n : {1, 2, 3, 6}) {
    for (int nmax : {1, 4, 7}) {
      const ModelParams p(1.0, 1.3, 0.07, n);
      const auto spec = HilbertSpec::dicke(nmax, n);
      CHECK(max_abs_diff(build_dicke_hamiltonian(p, spec).to_dense(),
                         oracle::dicke(1.0, 1.3, 0.07, n, nmax, false)) < 1e-14);
      CHECK(max_abs_diff(build_jc_rwa_hamiltonian(p, spec).to_dense(),
                         oracle::dicke(1.0, 1.3, 0.07, n, nmax, true)) < 1e-14);
    }
  }
  const auto p = ModelParams::from_collective(1.0, 0.9, 0.25);
  CHECK(max_abs_diff(build_bilinear_hamiltonian(p, HilbertSpec(5, 7)).to_dense(),
                     oracle::bilinear(1.0, 0.9, 0.25, 5, 7)) < 1e-14);
}

TEST_CASE("build_bilinear_hamiltonian: ground energies and stability guard") {
  const auto zero = build_bilinear_hamiltonian(ModelParams(1, 1, 0, 1), HilbertSpec::symmetric(8));
  CHECK(ground_state(zero).energy == doctest::Approx(0.0).epsilon(1e-14));

  const auto p = ModelParams::from_collective(1, 1, 0.2);
  const auto h = build_bilinear_hamiltonian(p, HilbertSpec::symmetric(12));
  const double expected = 0.5 * (std::sqrt(1.4) + std::sqrt(0.6)) - 1.0;
  CHECK(std::abs(ground_state(h).energy - expected) < 1e-10);

  CHECK_NOTHROW(build_bilinear_hamiltonian(ModelParams::from_collective(1, 1, 0.49),
                                           HilbertSpec::symmetric(4)));
  try {
    build_bilinear_hamiltonian(ModelParams::from_collective(1, 1, 0.5), HilbertSpec::symmetric(4));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("threshold") != std::string::npos);
  }
  // Detuned threshold: 4 lambda^2 < wa wb.
  CHECK_THROWS_AS(build_bilinear_hamiltonian(ModelParams::from_collective(1, 0.36, 0.3),
                                             HilbertSpec::symmetric(3)),
                  DomainError);
}

TEST_CASE("build_jc_rwa_hamiltonian: single-excitation splitting") {
  {
    const auto h = build_jc_rwa_hamiltonian(ModelParams(1, 1, 0.1, 1), HilbertSpec::dicke(3, 1));
    const auto dec = eigendecompose(h);
    // Spectrum: 0, then the single-excitation doublet 1 -+ 0.1.
    CHECK(dec.eigenvalues[1] == doctest::Approx(0.9).epsilon(1e-13));
    CHECK(dec.eigenvalues[2] == doctest::Approx(1.1).epsilon(1e-13));
  }
  const auto [lo, hi] = jc_single_excitation_energies(ModelParams(1, 1, 0.1, 4));
  CHECK(hi - lo == doctest::Approx(0.4).epsilon(1e-13));

  const auto diag = build_jc_rwa_hamiltonian(ModelParams(1, 1, 0.0, 3), HilbertSpec::dicke(4, 3));
  for (const auto& e : diag.entries()) CHECK(e.row == e.col);
}

TEST_CASE("excitation number: conserved by JC-RWA, broken by Dicke") {
  const ModelParams p(1.0, 1.1, 0.08, 3);
  const auto spec = HilbertSpec::dicke(5, 3);
  const auto number = excitation_number_operator(spec).to_dense();
  const auto jc = build_jc_rwa_hamiltonian(p, spec).to_dense();
  const auto dicke = build_dicke_hamiltonian(p, spec).to_dense();
  CHECK(commutator(jc, number).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(commutator(dicke, number).cwiseAbs().maxCoeff() > 0.05);
}

TEST_CASE("N=1 Dicke equals bilinear with a two-level matter cutoff") {
  const double g = 0.13;
  for (int nmax : {1, 3, 6}) {
    const auto d = build_dicke_hamiltonian(ModelParams(1.0, 0.8, g, 1), HilbertSpec::dicke(nmax, 1));
    const auto b = build_bilinear_hamiltonian(ModelParams::from_collective(1.0, 0.8, g),
                                              HilbertSpec(nmax, 2));
    REQUIRE(d.entries().size() == b.entries().size());
    for (std::size_t i = 0; i < d.entries().size(); ++i) {
      CHECK(d.entries()[i].row == b.entries()[i].row);
      CHECK(d.entries()[i].col == b.entries()[i].col);
      CHECK(d.entries()[i].value == b.entries()[i].value);
    }
  }
}

TEST_CASE("increasing the photon cutoff projects, never modifies") {
  const ModelParams p(1.0, 1.0, 0.11, 4);
  const auto small = HilbertSpec::dicke(3, 4);
  const auto large = HilbertSpec::dicke(9, 4);
  for (auto kind : {ModelKind::dicke, ModelKind::jc_rwa}) {
    const auto hs = build_hamiltonian(kind, p, small);
    const auto hl = build_hamiltonian(kind, p, large);
    for (int n = 0; n <= small.photon_cutoff; ++n)
      for (int k = 0; k < small.matter_dim; ++k)
        for (int n2 = 0; n2 <= small.photon_cutoff; ++n2)
          for (int k2 = 0; k2 < small.matter_dim; ++k2)
            CHECK(hs.at(small.index(n, k), small.index(n2, k2)) ==
                  hl.at(large.index(n, k), large.index(n2, k2)));
  }
}

TEST_CASE("expectation") {
  const HermitianOperator diag(2, {{1, 1, 1.0}});
  CHECK(expectation(diag, StateVector::basis(2, 0)) == 0.0);
  CHECK(expectation(diag, StateVector::basis(2, 1)) == 1.0);

  const auto spec = HilbertSpec::symmetric(10);
  const auto h = build_bilinear_hamiltonian(ModelParams::from_collective(1, 1, 0.2), spec);
  CHECK(expectation(h, StateVector::basis(spec.dim(), 0)) == 0.0);
  const auto gs = ground_state(h);
  const double e = expectation(h, gs.state);
  CHECK(e < 0.0);
  CHECK(e == doctest::Approx(gs.energy).epsilon(1e-12));

  CHECK_THROWS_AS(expectation(h, StateVector::basis(3, 0)), ConfigError);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(2);
  CHECK_THROWS_AS(StateVector{v}, ConfigError);
  CHECK(StateVector::normalized(v).amplitudes().norm() == doctest::Approx(1.0));
}
