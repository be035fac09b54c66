#include <doctest.h>

#include "eisarch/quadrature.hpp"
#include "eisarch/specfun.hpp"
#include "eisarch/verify_oracles.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::rel_err;

TEST_SUITE("quadrature") {
  TEST_CASE("gamma integral on the cone") {
    std::mt19937_64 rng(3);
    for (Field f : {Field::Real, Field::Complex})
      for (int r = 1; r <= (f == Field::Real ? 3 : 2); ++r) {
        const int iota = iota_of(f);
        const double kappa = 1.0 + 0.5 * iota * (r - 1);
        const ConeMatrix M = oracle::random_pd(rng, r, f, 0.5, 2.0);
        for (cplx s : {cplx(kappa + 0.7, 0.0), cplx(kappa + 2.0, 1.0)}) {
          ConeIntegrand I;
          I.r = r;
          I.field = f;
          I.M = M.mat();
          I.b = s - kappa;
          const QuadResult q = cone_integrate(I, QuadConfig{});
          const cplx want = gamma_r(s, r, iota) * std::pow(M.det(), -s);
          // default tolerance is 1e-6 relative
          CHECK(rel_err(q.value, want) < 1e-6);
          CHECK(std::abs(q.value - want) <= 10.0 * q.error_estimate + 1e-13 * std::abs(want));
        }
      }
  }

  TEST_CASE("shifted integrand, r = 1") {
    // int_0^inf e^{-x} (x + g) x^b dx = Gamma(b + 2) + g Gamma(b + 1)
    ConeIntegrand I;
    I.r = 1;
    I.M = CMat::identity(1);
    I.G = CMat::identity(1) * cplx(0.7);
    I.has_shift = true;
    I.a = 1.0;
    I.b = 0.4;
    const QuadResult q = cone_integrate(I, QuadConfig{});
    CHECK(rel_err(q.value, eisarch::gamma(2.4).real() + 0.7 * eisarch::gamma(1.4).real()) < 1e-9);
  }

  TEST_CASE("adaptive Gauss-Kronrod") {
    const GKResult g = gk15_adaptive([](double x) { return cplx(std::sin(x), std::exp(-x)); }, 0.0, kPi, 1e-14);
    CHECK(rel_err(g.value, cplx(2.0, 1.0 - std::exp(-kPi))) < 1e-13);
    // int_0^10 e^{-x} cos 5x dx
    const GKResult s = gk15_adaptive([](double x) { return cplx(std::exp(-x) * std::cos(5 * x)); }, 0.0, 10.0, 1e-14);
    const double want = (1.0 + std::exp(-10.0) * (5 * std::sin(50.0) - std::cos(50.0))) / 26.0;
    CHECK(rel_err(s.value, want) < 1e-12);
  }
}
