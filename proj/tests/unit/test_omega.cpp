#include <doctest.h>
#include <gsl/gsl_sf_hyperg.h>

#include "eisarch/omega.hpp"
#include "eisarch/verify_oracles.hpp"
#include "test_util.hpp"

using namespace eisarch;
using testutil::rel_err;
using testutil::thrown_kind;

namespace {

OmegaRequest req(const ConeMatrix& g, cplx a, cplx b) {
  OmegaRequest q;
  q.g = g;
  q.alpha = a;
  q.beta = b;
  return q;
}

void check_symmetry(Field f, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double k = kappa_of(r, iota_of(f));
  const ConeMatrix g = oracle::random_pd(rng, r, f, 0.5, 2.0);
  const cplx a(k + 0.6, 0.3), b(k + 0.9, -0.2);
  const OmegaValue v1 = omega(req(g, a, b));
  const OmegaValue v2 = omega(req(g, k - b, k - a));
  CHECK(rel_err(v1.value, v2.value) < 1e-6);
}

// N0 keeps the inner integral 1/4 inside its region; N0 + 1 amplifies the
// difference-stencil error, which the estimate has to cover.
void check_overlap(Field f, int r, std::uint64_t seed, bool deeper) {
  std::mt19937_64 rng(seed);
  const double k = kappa_of(r, iota_of(f));
  const OmegaRequest q = req(oracle::random_pd(rng, r, f, 0.8, 2.0), cplx(k + 0.4, 0.5), cplx(k + 0.5, 0.0));
  const OmegaValue direct = omega_convergent(q);
  const int N0 = std::max(1, int(std::ceil(q.alpha.real() - 0.75)));
  const OmegaValue cont = omega_continued(q, N0);
  CHECK(cont.continued);
  CHECK(rel_err(cont.value, direct.value) < 1e-6);
  if (deeper) {
    const OmegaValue c2 = omega_continued(q, N0 + 1);
    CHECK(std::abs(c2.value - direct.value) <= c2.error_estimate + 1e-6 * std::abs(direct.value));
  }
}

}  // namespace

TEST_SUITE("omega") {
  TEST_CASE("r = 1 against the confluent U function") {
    // omega(g; a, b) = g^b U(b, a + b, g)
    for (double g : {0.3, 1.0, 4.0})
      for (auto [a, b] : {std::pair{0.5, 1.5}, {2.5, 0.7}, {-0.8, 2.2}, {1.7, -0.6}, {0.4, -1.3}}) {
        const OmegaValue v = omega(req(ConeMatrix::scalar(g), a, b));
        const double want = std::pow(g, b) * gsl_sf_hyperg_U(b, a + b, g);
        CHECK(rel_err(v.value, want) < 1e-7);
      }
  }

  TEST_CASE("value 1 at alpha = kappa") {
    std::mt19937_64 rng(21);
    for (Field f : {Field::Real, Field::Complex})
      for (int r = 1; r <= 3; ++r) {
        const OmegaValue v = omega(req(oracle::random_pd(rng, r, f), kappa_of(r, iota_of(f)), cplx(0.3, 2.0)));
        CHECK(v.value == cplx(1.0));
      }
  }

  TEST_CASE("unitary invariance") {
    std::mt19937_64 rng(29);
    const ConeMatrix g = oracle::random_pd(rng, 2, Field::Real, 0.5, 2.0);
    const double t = 0.7;
    CMat k(2);
    k(0, 0) = std::cos(t);
    k(0, 1) = -std::sin(t);
    k(1, 0) = std::sin(t);
    k(1, 1) = std::cos(t);
    const OmegaValue v1 = omega(req(g, 2.1, 2.6));
    const OmegaValue v2 = omega(req(g.congruence(k), 2.1, 2.6));
    CHECK(rel_err(v1.value, v2.value) < 1e-8);
  }

  TEST_CASE("symmetry alpha, beta -> kappa - beta, kappa - alpha") {
    check_symmetry(Field::Real, 1, 23);
    check_symmetry(Field::Real, 2, 24);
    check_symmetry(Field::Complex, 1, 25);
  }

  TEST_CASE("continued and convergent evaluations agree on the overlap") {
    check_overlap(Field::Real, 1, 31, true);
    check_overlap(Field::Real, 2, 32, true);
    check_overlap(Field::Complex, 1, 33, true);
  }

  TEST_CASE("plan selection and region errors") {
    const OmegaPlan p1 = omega_plan(1, 1, 2.0, 1.0);
    CHECK_FALSE(p1.continued);
    const OmegaPlan p2 = omega_plan(1, 1, 2.0, -1.5);
    CHECK(p2.continued);
    CHECK(p2.N >= 1);
    CHECK(thrown_kind([] { omega_convergent(req(ConeMatrix::scalar(1.0), 1.5, -0.5)); }) ==
          ErrorKind::OutOfConvergenceRegion);
    CHECK(thrown_kind([] { omega_continued(req(ConeMatrix::scalar(1.0), 2.5, 0.5), 1); }) == ErrorKind::DomainError);
    CHECK(thrown_kind([] { omega_continued(req(ConeMatrix::scalar(1.0), 0.5, 0.5), 5); }) == ErrorKind::Unsupported);
    CHECK(thrown_kind([] { omega(req(ConeMatrix::real_diag({1.0, -1.0}), 1.5, 2.0)); }) ==
          ErrorKind::NotPositiveDefinite);
  }

  TEST_CASE("s-derivative matches a difference quotient") {
    const OmegaRequest q = req(ConeMatrix::scalar(1.3), 2.2, 1.6);
    const OmegaValue d = omega_ds(q);
    const double h = 1e-4;
    const cplx vp = omega(req(q.g, 2.2 + 0.5 * h, 1.6 + 0.5 * h)).value;
    const cplx vm = omega(req(q.g, 2.2 - 0.5 * h, 1.6 - 0.5 * h)).value;
    CHECK(rel_err(d.value, (vp - vm) / (2 * h)) < 1e-5);
  }
}

// Unitary r = 2 continuation: one full shifted cone integral per stencil point.
TEST_SUITE("omega_slow") {
  TEST_CASE("unitary r = 2 symmetry") { check_symmetry(Field::Complex, 2, 26); }
  TEST_CASE("unitary r = 2 overlap") { check_overlap(Field::Complex, 2, 34, false); }
}
