#include <doctest.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>

#include "eisarch/greenform.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::thrown_kind;

namespace {

Vec mul(const CMat& g, const Vec& x, int n) {
  Vec y{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += g(i, j) * x[j];
  return y;
}

// Boost in the (e0, e1) plane preserves diag(1, -1, -1); a phase rotation
// combined with a boost preserves diag(1, -1).
CMat o12_isometry(double t, double th) {
  CMat b(3);
  b(0, 0) = std::cosh(t);
  b(0, 1) = std::sinh(t);
  b(1, 0) = std::sinh(t);
  b(1, 1) = std::cosh(t);
  b(2, 2) = 1.0;
  CMat r(3);
  r(0, 0) = 1.0;
  r(1, 1) = std::cos(th);
  r(1, 2) = -std::sin(th);
  r(2, 1) = std::sin(th);
  r(2, 2) = std::cos(th);
  return b * r;
}

CMat u11_isometry(double t, double th) {
  CMat b(2);
  b(0, 0) = std::cosh(t);
  b(0, 1) = std::sinh(t);
  b(1, 0) = std::sinh(t);
  b(1, 1) = std::cosh(t);
  CMat p(2);
  p(0, 0) = std::polar(1.0, th);
  p(1, 1) = 1.0;
  return b * p;
}

}  // namespace

TEST_SUITE("greenform") {
  TEST_CASE("rank-1 Green function of x") {
    for (double x : {0.01, 0.5, 3.0}) {
      CHECK(green_from_x(x) == doctest::Approx(gsl_sf_expint_E1(x)).epsilon(1e-12));
      CHECK(green_from_x(x, 0.5) == doctest::Approx(std::pow(x, 0.5) * gsl_sf_gamma_inc(-0.5, x)).epsilon(1e-12));
    }
  }

  TEST_CASE("majorant decomposition Q_z = Q + 2h") {
    for (const HermitianSpace& V : {HermitianSpace::o12(), HermitianSpace::u11()}) {
      const int n = V.dim();
      for (cplx w : {cplx(0.2, 0.6), cplx(-0.3, 0.3), cplx(0.0, 0.1)}) {
        const cplx ww = V.field() == Field::Real ? w + cplx(0.0, 0.5) : w;
        const DomainPoint z = chart_point(V, ww);
        const Vec c = n == 3 ? Vec{1.0, 0.4, -0.7, 0.0} : Vec{cplx(0.8, 0.1), cplx(-0.5, 0.3), 0.0, 0.0};
        const SpaceVector v = space_vector(V, c);
        const Majorant m = majorant_and_norm(z, v, V);
        CHECK(m.h >= 0.0);
        CHECK(m.Qz == doctest::Approx(v.qvv + 2.0 * m.h).epsilon(1e-12));
        CHECK(m.Qz > 0.0);
      }
    }
  }

  TEST_CASE("isometry equivariance of h and the Green function") {
    struct Case {
      HermitianSpace V;
      CMat g;
      Vec v;
      cplx w;
    };
    const Case cases[] = {
        {HermitianSpace::o12(), o12_isometry(0.4, 0.9), Vec{1.0, 0.3, 0.5, 0.0}, cplx(0.1, 1.1)},
        {HermitianSpace::u11(), u11_isometry(0.3, 1.2), Vec{cplx(1.0, 0.2), cplx(0.4, -0.1), 0.0, 0.0},
         cplx(0.2, -0.1)},
    };
    for (const Case& c : cases) {
      const int n = c.V.dim();
      const DomainPoint z = chart_point(c.V, c.w);
      const SpaceVector v = space_vector(c.V, c.v);
      const DomainPoint gz = point_from_frame(c.V, mul(c.g, z.frame, n));
      const SpaceVector gv = space_vector(c.V, mul(c.g, c.v, n));
      CHECK(gv.qvv == doctest::Approx(v.qvv).epsilon(1e-12));
      CHECK(majorant_and_norm(gz, gv, c.V).h == doctest::Approx(majorant_and_norm(z, v, c.V).h).epsilon(1e-10));
      CHECK(green_rank1(gz, gv, c.V) == doctest::Approx(green_rank1(z, v, c.V)).epsilon(1e-10));
    }
  }

  TEST_CASE("divisor points have h = 0") {
    const HermitianSpace V = HermitianSpace::u11();
    const SpaceVector v = space_vector(V, Vec{1.0, 0.5, 0.0, 0.0});
    const auto pts = divisor_in_chart(v, V);
    REQUIRE(pts.size() == 1);
    const DomainPoint z = chart_point(V, pts[0]);
    CHECK(majorant_and_norm(z, v, V).h < 1e-12);
    CHECK(thrown_kind([&] { green_rank1(z, v, V); }) == ErrorKind::OnDivisor);
    CHECK(thrown_kind([&] { green_rank1(z, space_vector(V, Vec{}), V); }) == ErrorKind::ZeroVector);
  }

  TEST_CASE("chart coordinates round-trip") {
    for (const HermitianSpace& V : {HermitianSpace::o12(), HermitianSpace::u11()}) {
      const cplx w = V.field() == Field::Real ? cplx(0.3, 0.8) : cplx(0.3, -0.4);
      CHECK(V.in_chart(w));
      const Vec F = V.frame(w);
      CHECK(std::abs(V.chart_coordinate(F) - w) < 1e-14);
    }
    CHECK_FALSE(HermitianSpace::o12().in_chart(cplx(0.0, -1.0)));
    CHECK_FALSE(HermitianSpace::u11().in_chart(cplx(1.2, 0.0)));
  }

  TEST_CASE("non-standard Gram matrices and signature checks") {
    CMat G(3);
    G(0, 1) = G(1, 0) = 1.0;  // hyperbolic plane plus a negative line
    G(2, 2) = -1.0;
    const HermitianSpace V(Field::Real, G);
    const SpaceVector v = space_vector(V, Vec{1.0, 1.0, 0.5, 0.0});
    const GreenReport rep = greens_identity_check(v, V, ChartGrid{11}, 1e-3);
    CHECK(rep.points > 0);
    CHECK(rep.residual < 1e-3);
    CHECK(thrown_kind([] { HermitianSpace(Field::Real, CMat::diag({1.0, 1.0, -1.0})); }) == ErrorKind::DomainError);
  }

  TEST_CASE("second-order convergence of the Green identity residual") {
    const HermitianSpace V = HermitianSpace::o12();
    const SpaceVector v = space_vector(V, Vec{1.0, 0.5, 0.0, 0.0});
    const GreenReport rep = greens_identity_check(v, V, ChartGrid{11}, 2e-3);
    CHECK(rep.order == doctest::Approx(2.0).epsilon(0.1));
  }

  TEST_CASE("transgression residual is small") {
    const HermitianSpace V = HermitianSpace::u11();
    const SpaceVector v = space_vector(V, Vec{1.0, 0.5, 0.0, 0.0});
    const DomainPoint z = chart_point(V, cplx(0.1, 0.2));
    CHECK(transgression_check(z, v, V, 1.0) < 1e-4);
    CHECK(transgression_check(z, v, V, 0.3) < 1e-4);
  }
}
