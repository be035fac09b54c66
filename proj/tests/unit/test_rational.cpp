#include <doctest.h>

#include <random>

#include "eisarch/rational.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::thrown_kind;

namespace {

RatMatrix from_ints(std::initializer_list<std::initializer_list<int>> rows) {
  RatMatrix T(int(rows.size()), false);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (int x : row) T(i, j++) = GaussRat(Rat(x));
    ++i;
  }
  return T;
}

// B^dagger D B with D = diag(d) and B integral: a rank-deficient self-adjoint matrix.
RatMatrix low_rank(std::mt19937_64& rng, int n, int t, bool herm) {
  std::uniform_int_distribution<int> u(-3, 3);
  RatMatrix B(n, herm), D(n, herm);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = GaussRat(Rat(u(rng)), herm ? Rat(u(rng)) : Rat(0));
  static const int diag[] = {1, -1, 2, -3};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < t; ++i) D(i, i) = GaussRat(Rat(diag[pick(rng)]));
  return B.adjoint() * D * B;
}

RatMatrix block(const RatMatrix& S, int n) {
  RatMatrix M(n, S.hermitian);
  const int off = n - S.n;
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j) M(off + i, off + j) = S(i, j);
  return M;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("parsing exact rationals") {
    CHECK(parse_rational("3/6") == Rat(1, 2));
    CHECK(parse_rational("-7") == Rat(-7));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(parse_rational("0.1") == Rat(1, 10));
    CHECK(parse_rational("-1.5") == Rat(-3, 2));
    CHECK(parse_rational("010/4") == Rat(5, 2));
    CHECK(parse_rational("-007") == Rat(-7));
    CHECK(parse_rational("0.05") == Rat(1, 20));
    for (const char* bad : {"abc", "1/0", "", "1.2.3", "nan"})
      CHECK(thrown_kind([&] { parse_rational(bad); }) == ErrorKind::NonRationalInput);
  }

  TEST_CASE("determinant, rank and pseudo-determinant") {
    const RatMatrix T = from_ints({{1, 1}, {1, 1}});
    CHECK(T.det().is_zero());
    CHECK(T.rank() == 1);
    CHECK(det_prime(T) == GaussRat(Rat(2)));
    const RatMatrix U = from_ints({{2, 1, 0}, {1, 2, 0}, {0, 0, 0}});
    CHECK(U.rank() == 2);
    CHECK(det_prime(U) == GaussRat(Rat(3)));
  }

  TEST_CASE("worked example") {
    const Reduction r = reduce_degenerate(from_ints({{1, 1}, {1, 1}}));
    CHECK(r.rank == 1);
    CHECK(r.gamma_inv == from_ints({{1, 0}, {-1, 1}}));
    CHECK(r.S == from_ints({{1}}));
    CHECK(r.det_S == GaussRat(Rat(1)));
    CHECK(r.det_prime_T == GaussRat(Rat(2)));
    CHECK(r.discrepancy);
  }

  TEST_CASE("reduction identity on random low-rank matrices") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
      const bool herm = trial % 3 == 0;
      const int n = 2 + trial % 3;
      const int t = 1 + trial % (n - 1);
      const RatMatrix T = low_rank(rng, n, t, herm);
      if (T.rank() == 0 || T.rank() == n) continue;
      const Reduction red = reduce_degenerate(T);
      CHECK(red.rank == T.rank());
      CHECK(red.gamma.det() == GaussRat(Rat(1)));
      CHECK(red.gamma * red.gamma_inv == RatMatrix::identity(n, herm));
      CHECK(red.gamma_inv.adjoint() * T * red.gamma_inv == block(red.S, n));
      CHECK_FALSE(red.S.det().is_zero());
    }
  }

  TEST_CASE("input validation") {
    CHECK(thrown_kind([] { require_self_adjoint(from_ints({{1, 2}, {0, 1}})); }) == ErrorKind::NonSelfAdjoint);
  }
}
