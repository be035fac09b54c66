#include <doctest.h>

#include "eisarch/whittaker.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::rel_err;
using testutil::thrown_kind;

TEST_SUITE("whittaker") {
  TEST_CASE("r = 1 positive T matches direct integration") {
    for (int m : {2, 4, 6}) {
      const CaseParams ctx = CaseParams::orthogonal(m, 1);
      for (double T : {0.5, 1.0})
        for (double y : {0.4, 1.0, 2.0})
          for (cplx s : {cplx(ctx.s0), cplx(ctx.s0 + 0.7, 0.0), cplx(ctx.s0 + 1.0, 0.5)}) {
            const WhittakerValue w = normalized_whittaker(ConeMatrix::scalar(T), ConeMatrix::scalar(y), s, ctx);
            const WhittakerValue o = whittaker_oracle_r1(T, y, s, ctx);
            CHECK(w.branch == WhittakerBranch::PosDef);
            CHECK(rel_err(w.value, o.value) < 1e-6);
          }
    }
  }

  TEST_CASE("value at s0 is independent of y for positive T") {
    const CaseParams ctx = CaseParams::orthogonal(5, 2);
    const ConeMatrix T = ConeMatrix::real({{1.0, 0.3}, {0.3, 0.8}});
    const cplx want = whittaker_s0_value(T, ctx);
    for (double lam : {0.5, 1.0, 3.0}) {
      const ConeMatrix y = ConeMatrix::real({{1.2, -0.1}, {-0.1, 0.7}}).scaled(lam);
      CHECK(rel_err(normalized_whittaker(T, y, ctx.s0, ctx).value, want) < 1e-6);
    }
  }

  TEST_CASE("negative T vanishes at s0 and matches the oracle up to the normalizer") {
    const CaseParams ctx = CaseParams::orthogonal(4, 1);
    const ConeMatrix T = ConeMatrix::scalar(-1.0);
    const WhittakerValue w0 = normalized_whittaker(T, ConeMatrix::scalar(1.0), ctx.s0, ctx);
    CHECK(w0.branch == WhittakerBranch::IndefiniteShape);
    CHECK(w0.value == cplx(0.0));
    const cplx s(ctx.s0 + 0.6, 0.2);
    const cplx beta = 0.5 * (s - ctx.s0);
    const cplx C = negative_definite_normalizer(beta, ctx);
    for (double y : {0.5, 1.0}) {
      const WhittakerValue shape = normalized_whittaker(T, ConeMatrix::scalar(y), s, ctx);
      const WhittakerValue o = whittaker_oracle_r1(-1.0, y, s, ctx);
      CHECK(rel_err(C * shape.value, o.value) < 1e-6);
    }
  }

  TEST_CASE("mixed signature") {
    const CaseParams ctx = CaseParams::orthogonal(5, 2);
    const ConeMatrix T = ConeMatrix::real_diag({1.0, -2.0});
    const ConeMatrix y = ConeMatrix::identity(2);
    CHECK(normalized_whittaker(T, y, ctx.s0, ctx).value == cplx(0.0));
    CHECK(thrown_kind([&] { normalized_whittaker(T, y, ctx.s0 + 0.5, ctx); }) == ErrorKind::Unsupported);
    CHECK(thrown_kind([&] { normalized_whittaker(ConeMatrix::real_diag({1.0, 0.0}), y, ctx.s0, ctx); }) ==
          ErrorKind::SingularT);
  }

  TEST_CASE("derivative at s0 matches the oracle difference quotient") {
    const CaseParams ctx = CaseParams::orthogonal(4, 1);
    const double T = 1.0, y = 0.8, h = 1e-3;
    const WhittakerValue d = whittaker_s0_deriv(ConeMatrix::scalar(T), ConeMatrix::scalar(y), ctx);
    const cplx fd = (whittaker_oracle_r1(T, y, ctx.s0 + h, ctx).value - whittaker_oracle_r1(T, y, ctx.s0 - h, ctx).value) /
                    (2 * h);
    CHECK(rel_err(d.value, fd) < 1e-5);
    CHECK(thrown_kind([&] { whittaker_s0_deriv(ConeMatrix::scalar(T), ConeMatrix::scalar(y), ctx, 1.0); }) ==
          ErrorKind::DomainError);
  }

  TEST_CASE("derivative approaches its asymptote as y grows") {
    const CaseParams ctx = CaseParams::orthogonal(6, 1);
    const ConeMatrix T = ConeMatrix::scalar(1.0);
    const cplx a = whittaker_deriv_asymptote(T, ctx);
    double prev = 1e300;
    for (double lam : {10.0, 40.0, 160.0}) {
      const double r = std::abs(whittaker_s0_deriv(T, ConeMatrix::scalar(0.05 * lam), ctx).value - a);
      CHECK(r < prev);
      prev = r;
    }
  }

  TEST_CASE("unitary, r = 1: y-independence at s0") {
    const CaseParams ctx = CaseParams::unitary(3, 1, 1);
    const ConeMatrix T = ConeMatrix::identity(1, Field::Complex).scaled(0.7);
    const cplx want = whittaker_s0_value(T, ctx);
    for (double y : {0.5, 2.0})
      CHECK(rel_err(normalized_whittaker(T, ConeMatrix::identity(1, Field::Complex).scaled(y), ctx.s0, ctx).value,
                    want) < 1e-6);
  }
}
