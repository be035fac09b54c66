#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "eisarch/error.hpp"
#include "eisarch/matcone.hpp"

namespace testutil {

using eisarch::cplx;

inline double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Exception kind check; doctest's CHECK_THROWS_AS cannot see the kind.
template <class Fn>
eisarch::ErrorKind thrown_kind(Fn&& fn) {
  try {
    fn();
  } catch (const eisarch::Error& e) {
    return e.kind();
  }
  FAIL("expected an eisarch::Error");
  return eisarch::ErrorKind::ConfigError;
}

inline eisarch::CMat random_cmat(std::mt19937_64& rng, int r, bool complex) {
  std::normal_distribution<double> n;
  eisarch::CMat m(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = cplx(n(rng), complex ? n(rng) : 0.0);
  return m;
}

}  // namespace testutil
