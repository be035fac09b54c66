#include <doctest.h>

#include "eisarch/laurent.hpp"
#include "eisarch/specfun.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::rel_err;

TEST_SUITE("laurent") {
  TEST_CASE("gamma expansion at the origin") {
    const LaurentValue g = laurent_gamma(0.0, 4);
    CHECK(g.min_order() == -1);
    CHECK(rel_err(g.coeff(-1), 1.0) < 1e-14);
    CHECK(rel_err(g.coeff(0), -kEulerGamma) < 1e-13);
    // second coefficient: (gamma^2 + pi^2/6) / 2
    CHECK(rel_err(g.coeff(1), 0.5 * (kEulerGamma * kEulerGamma + kPi * kPi / 6.0)) < 1e-12);
  }

  TEST_CASE("gamma expansion at a regular point matches values nearby") {
    const cplx z0(2.5, 0.3);
    const LaurentValue g = laurent_gamma(z0, 6);
    const cplx dz(1e-2, -5e-3);
    cplx sum = 0.0;
    for (int n = g.min_order(); n <= g.max_order(); ++n) sum += g.coeff(n) * std::pow(dz, n);
    CHECK(rel_err(sum, gamma(z0 + dz)) < 1e-12);
  }

  TEST_CASE("arithmetic identities") {
    const int K = 6;
    const LaurentValue a = LaurentValue::exp_linear(0.0, 1.5, K);
    const LaurentValue b = LaurentValue::exp_linear(0.0, -0.5, K);
    const LaurentValue ab = a * b;
    const LaurentValue c = LaurentValue::exp_linear(0.0, 1.0, K);
    for (int n = 0; n <= K; ++n) CHECK(rel_err(ab.coeff(n), c.coeff(n)) < 1e-14);
    const LaurentValue q = ab / b;
    for (int n = 0; n <= K; ++n) CHECK(rel_err(q.coeff(n), a.coeff(n)) < 1e-13);
    const LaurentValue z = a - a;
    for (int n = 0; n <= K; ++n) CHECK(std::abs(z.coeff(n)) == 0.0);
  }

  TEST_CASE("pole times zero") {
    const LaurentValue g = laurent_gamma(0.0, 5);
    const LaurentValue zf(0.0, 1, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    const LaurentValue p = g * zf;  // z Gamma(z) = Gamma(1 + z)
    CHECK(rel_err(p.value_at_center(), 1.0) < 1e-14);
    const LaurentValue g1 = laurent_gamma(1.0, 4);
    for (int n = 0; n <= 3; ++n) CHECK(rel_err(p.coeff(n), g1.coeff(n)) < 1e-12);
  }

  TEST_CASE("substitution rescales coefficients") {
    const LaurentValue g = laurent_gamma(0.0, 4);
    const LaurentValue h = g.substitute(0.0, 2.0);  // Gamma(2w)
    CHECK(rel_err(h.coeff(-1), 0.5) < 1e-14);
    CHECK(rel_err(h.coeff(0), -kEulerGamma) < 1e-13);
    CHECK(rel_err(h.coeff(1), 2.0 * g.coeff(1)) < 1e-13);
  }
}
