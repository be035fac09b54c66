#include <doctest.h>

#include "eisarch/eiscoef.hpp"
#include "eisarch/verify_oracles.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::rel_err;
using testutil::thrown_kind;

namespace {

RatMatrix scalar_rat(int x) {
  RatMatrix T(1, false);
  T(0, 0) = GaussRat(Rat(x));
  return T;
}

}  // namespace

TEST_SUITE("eiscoef") {
  TEST_CASE("d factor by Laurent expansion agrees with sampling") {
    for (const CaseParams& ctx : {CaseParams::orthogonal(2, 1), CaseParams::orthogonal(3, 2),
                                  CaseParams::orthogonal(4, 3), CaseParams::unitary(1, 1, 1),
                                  CaseParams::unitary(2, 2, 0), CaseParams::unitary(3, 3, 1)}) {
      const DFactor d = d_factor(ctx);
      const oracle::DSample s = oracle::d_by_sampling(ctx);
      CHECK(rel_err(d.d0, s.d0) < 1e-8);
      CHECK(rel_err(d.dlog0, s.dlog0) < 1e-6);
    }
    CHECK(rel_err(d_factor(CaseParams::orthogonal(2, 1)).d0, cplx(0.0, kPi)) < 1e-14);
    CHECK(thrown_kind([] { d_factor(CaseParams::orthogonal(4, 1)); }) == ErrorKind::WrongCenter);
  }

  TEST_CASE("nondegenerate constants and coefficient assembly") {
    const CaseParams ctx = CaseParams::orthogonal(6, 1);
    const auto trc = TotallyRealContext::single(ConeMatrix::scalar(1.0), ConeMatrix::scalar(0.05));
    const FiniteWhittakerDatum datum{1.0, 0.3, "test"};
    const CoeffResult c = beta_kappa_nondeg(ctx, trc, datum);
    CHECK(c.flags.empty());
    double prev = 1e300;
    for (double lam : {25.0, 50.0, 100.0}) {
      const CoeffResult a = assemble_coefficient(ctx, trc, datum, ctx.s0, lam);
      REQUIRE(a.residual.has_value());
      CHECK(*a.residual < prev);
      prev = *a.residual;
      CHECK(rel_err(a.beta, c.beta) < 1e-12);
    }
  }

  TEST_CASE("not totally positive T gives zero constants") {
    const CaseParams ctx = CaseParams::orthogonal(6, 1);
    const auto trc = TotallyRealContext::single(ConeMatrix::scalar(-1.0), ConeMatrix::scalar(1.0));
    const CoeffResult c = beta_kappa_nondeg(ctx, trc, FiniteWhittakerDatum{1.0, 0.3, ""});
    CHECK(c.beta == cplx(0.0));
    CHECK(c.kappa == cplx(0.0));
    CHECK_FALSE(c.flags.empty());
  }

  TEST_CASE("general T: rank cases and required data") {
    const FiniteWhittakerDatum dp{1.0, 0.25, "S"};
    // full rank reduces to the nondegenerate constants
    const CaseParams c1 = CaseParams::orthogonal(6, 1);
    const CoeffResult g = beta_kappa_general(scalar_rat(1), c1, 1, dp, std::nullopt);
    const CoeffResult n =
        beta_kappa_nondeg(c1, TotallyRealContext::single(ConeMatrix::scalar(1.0), ConeMatrix::scalar(1.0)), dp);
    CHECK(rel_err(g.beta, n.beta) < 1e-12);
    CHECK(rel_err(g.kappa, n.kappa) < 1e-12);
    // T = 0 at s0 > 0: kappa vanishes
    const CoeffResult z = beta_kappa_general(scalar_rat(0), c1, 1, dp, std::nullopt);
    CHECK(z.kappa == cplx(0.0));
    // s0 = 0 needs the second datum
    const CaseParams c0 = CaseParams::orthogonal(2, 1);
    CHECK(thrown_kind([&] { beta_kappa_general(scalar_rat(0), c0, 1, dp, std::nullopt); }) ==
          ErrorKind::MissingDoublePrimeDatum);
  }

  TEST_CASE("d function near zero matches d0") {
    const CaseParams ctx = CaseParams::orthogonal(3, 2);
    const cplx d0 = d_factor(ctx).d0;
    CHECK(rel_err(d_function(ctx, 1e-6), d0) < 1e-4);
  }
}
