#include <doctest.h>

#include "eisarch/matcone.hpp"
#include "eisarch/verify_oracles.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::thrown_kind;

TEST_SUITE("matcone") {
  TEST_CASE("eigen decomposition reconstructs the matrix") {
    std::mt19937_64 rng(7);
    for (Field f : {Field::Real, Field::Complex})
      for (int r = 1; r <= 4; ++r) {
        const CMat a = testutil::random_cmat(rng, r, f == Field::Complex);
        const ConeMatrix A(f, (a + a.adjoint()) * cplx(0.5));
        const EigenResult e = eigen_sym_herm(A);
        REQUIRE(int(e.values.size()) == r);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        CMat D(r);
        for (int i = 0; i < r; ++i) D(i, i) = e.values[i];
        const CMat back = e.vectors * D * e.vectors.adjoint();
        CHECK((back - A.mat()).norm_fro() < 1e-12 * (1.0 + A.norm()));
        const CMat id = e.vectors.adjoint() * e.vectors;
        CHECK((id - CMat::identity(r)).norm_fro() < 1e-12);
      }
  }

  TEST_CASE("cholesky and square roots") {
    std::mt19937_64 rng(11);
    for (Field f : {Field::Real, Field::Complex})
      for (int r = 1; r <= 4; ++r) {
        const ConeMatrix A = oracle::random_pd(rng, r, f);
        const CMat L = cholesky_pd(A);
        CHECK((L * L.adjoint() - A.mat()).norm_fro() < 1e-12 * A.norm());
        const ConeMatrix s = pd_sqrt(A);
        CHECK((s.mat() * s.mat() - A.mat()).norm_fro() < 1e-12 * A.norm());
        const ConeMatrix si = pd_inverse_sqrt(A);
        CHECK((si.mat() * s.mat() - CMat::identity(r)).norm_fro() < 1e-12);
      }
  }

  TEST_CASE("determinant under congruence") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const bool cx = trial % 2;
      const int r = 1 + trial % 4;
      const ConeMatrix A = oracle::random_pd(rng, r, cx ? Field::Complex : Field::Real);
      const CMat k = testutil::random_cmat(rng, r, cx);
      const double dk = std::norm(k.det());
      CHECK(A.congruence(k).det() == doctest::Approx(dk * A.det()).epsilon(1e-10));
    }
  }

  TEST_CASE("validation errors") {
    CMat m(2);
    m(0, 1) = 1.0;
    CHECK(thrown_kind([&] { ConeMatrix(Field::Real, m); }) == ErrorKind::NonSelfAdjoint);
    CHECK(thrown_kind([] { require_pd(ConeMatrix::real_diag({1.0, -1.0}), "A"); }) ==
          ErrorKind::NotPositiveDefinite);
    CHECK(require_pd(ConeMatrix::real_diag({2.0, 0.5}), "A") == doctest::Approx(0.5));
  }

  TEST_CASE("signature data") {
    const ConeMatrix T = ConeMatrix::real_diag({2.0, -3.0, 0.0});
    const MuSpectrum mu = mu_spectrum(ConeMatrix::identity(3), T);
    CHECK(mu.n_pos == 1);
    CHECK(mu.n_neg == 1);
    CHECK(mu.rank == 2);
    CHECK(det_prime(T) == doctest::Approx(-6.0));
    // y-congruence keeps the inertia
    const MuSpectrum mu2 = mu_spectrum(ConeMatrix::real_diag({0.5, 4.0, 2.0}), T);
    CHECK(mu2.n_pos == 1);
    CHECK(mu2.n_neg == 1);
  }
}
