#include <doctest.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>
#include <gsl/gsl_sf_result.h>

#include "eisarch/specfun.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::rel_err;

namespace {

cplx gsl_gamma(cplx z) {
  gsl_sf_result lnr, arg;
  gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  return std::polar(std::exp(lnr.val), arg.val);
}

// pi^{iota r(r-1)/4} prod_j Gamma(beta - iota j / 2)
cplx gamma_r_product(cplx beta, int r, int iota) {
  cplx v = std::pow(kPi, 0.25 * iota * r * (r - 1));
  for (int j = 0; j < r; ++j) v *= gsl_gamma(beta - 0.5 * iota * j);
  return v;
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("complex gamma against GSL") {
    for (double re : {-2.7, -0.5, 0.3, 1.0, 4.5, 17.2})
      for (double im : {0.0, 0.4, -3.0, 12.0}) {
        const cplx z(re, im);
        CHECK(rel_err(gamma(z), gsl_gamma(z)) < 1e-13);
      }
  }

  TEST_CASE("digamma, upper gamma, E1 against GSL") {
    for (double x : {0.2, 1.0, 2.5, 10.0, 40.0}) CHECK(digamma(x) == doctest::Approx(gsl_sf_psi(x)).epsilon(1e-13));
    for (double a : {-1.5, -0.5, 0.5, 2.3})
      for (double x : {0.1, 1.0, 5.0, 30.0})
        CHECK(upper_gamma(a, x) == doctest::Approx(gsl_sf_gamma_inc(a, x)).epsilon(1e-12));
    for (double x : {1e-3, 0.5, 3.0, 50.0}) CHECK(expint_e1(x) == doctest::Approx(gsl_sf_expint_E1(x)).epsilon(1e-12));
  }

  TEST_CASE("matrix gamma as a product") {
    for (int iota : {1, 2})
      for (int r = 1; r <= 4; ++r)
        for (cplx b : {cplx(3.2, 0.0), cplx(5.0, 1.5), cplx(2.6, -0.7)}) {
          if (b.real() - 0.5 * iota * (r - 1) <= 0.0) continue;
          CHECK(rel_err(gamma_r(b, r, iota), gamma_r_product(b, r, iota)) < 1e-12);
        }
  }

  TEST_CASE("matrix gamma log-derivative") {
    for (int iota : {1, 2})
      for (int r = 1; r <= 3; ++r) {
        const double b = 4.3, h = 1e-5;
        const double fd = (std::log(std::abs(gamma_r(b + h, r, iota))) - std::log(std::abs(gamma_r(b - h, r, iota)))) /
                          (2 * h);
        CHECK(gamma_r_logderiv(b, r, iota) == doctest::Approx(fd).epsilon(1e-8));
      }
  }

  TEST_CASE("case parameters") {
    const CaseParams o = CaseParams::orthogonal(4, 1);
    CHECK(o.iota == 1);
    CHECK(o.kappa == 1.0);
    CHECK(o.s0 == 1.0);
    const CaseParams o3 = CaseParams::orthogonal(6, 3);
    CHECK(o3.kappa == 2.0);
    CHECK(o3.s0 == 1.0);
    const CaseParams u = CaseParams::unitary(3, 2, 1);
    CHECK(u.iota == 2);
    CHECK(u.kappa == 2.0);
    CHECK(u.s0 == 0.5);
    CHECK(testutil::thrown_kind([] { CaseParams::unitary(3, 1, 0); }) == ErrorKind::DomainError);
  }

  TEST_CASE("principal power") {
    const cplx z(-1.0, 0.0);
    CHECK(rel_err(principal_pow(z, 0.5), cplx(0.0, 1.0)) < 1e-15);
    CHECK(rel_err(principal_pow(cplx(2.0, 0.0), cplx(0.0, 1.0)), std::exp(cplx(0.0, std::log(2.0)))) < 1e-15);
  }
}
