#include <doctest.h>

#include "eisarch/finite_difference.hpp"
#include "test_util.hpp"

using namespace eisarch;

namespace {

DiffPoly partial(int i, int order = 1) {
  DiffPoly p;
  Monomial m{};
  m[i] = order;
  p.terms[m] = 1.0;
  return p;
}

DiffPoly constant(cplx c) {
  DiffPoly p;
  p.terms[Monomial{}] = c;
  return p;
}

}  // namespace

TEST_SUITE("finite_difference") {
  TEST_CASE("coordinate counts") {
    CHECK(MatrixCoords(1, Field::Real).size() == 1);
    CHECK(MatrixCoords(2, Field::Real).size() == 3);
    CHECK(MatrixCoords(3, Field::Real).size() == 6);
    CHECK(MatrixCoords(2, Field::Complex).size() == 4);
    CHECK(MatrixCoords(3, Field::Complex).size() == 9);
  }

  TEST_CASE("central stencils are exact on low-degree polynomials") {
    for (int e = 1; e <= 4; ++e) {
      const auto st = central_stencil(e);
      // d^e/dx^e x^e at 0 is e!, and lower powers vanish
      for (int k = 0; k <= e; ++k) {
        double s = 0.0;
        for (auto [off, w] : st) s += w * std::pow(double(off), k);
        double fact = 1.0;
        for (int j = 2; j <= e; ++j) fact *= j;
        CHECK(s == doctest::Approx(k == e ? fact : 0.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("polynomial algebra") {
    const DiffPoly p = partial(0) + constant(-1.0);
    const DiffPoly p2 = power(p, 2);  // d^2 - 2d + 1
    CHECK(p2.max_order() == 2);
    CHECK(p2.terms.at(Monomial{}) == cplx(1.0));
    CHECK(p2.terms.at(partial(0).terms.begin()->first) == cplx(-2.0));
  }

  TEST_CASE("r = 1 conjugated operator is F' - F") {
    const MatrixCoords c(1, Field::Real);
    const DiffPoly d = conjugated_delta(c);
    auto F = [](const CMat& g) { return g(0, 0) * g(0, 0) + g(0, 0); };
    const CMat g = CMat::identity(1) * cplx(2.0);
    // 2g + 1 - g^2 - g at g = 2
    CHECK(std::abs(apply_diff_poly(d, c, F, g, 1e-3) - cplx(-1.0)) < 1e-9);
  }

  TEST_CASE("conjugated operator and the Cayley identity") {
    // On e^{tr g} det(g)^s it reduces to Delta det(g)^s = s (s + 1/2) det(g)^{s-1}.
    const MatrixCoords c(2, Field::Real);
    const DiffPoly d = conjugated_delta(c);
    const double s = 1.3;
    auto F = [&](const CMat& g) { return std::exp(g.trace()) * std::pow(g.det(), s); };
    const ConeMatrix g = ConeMatrix::real({{1.5, 0.2}, {0.2, 0.9}});
    const cplx got = apply_diff_poly(d, c, F, g.mat(), 1e-3) / std::exp(g.trace());
    const cplx want = s * (s + 0.5) * std::pow(g.det(), s - 1.0);
    CHECK(testutil::rel_err(got, want) < 1e-5);
  }
}
