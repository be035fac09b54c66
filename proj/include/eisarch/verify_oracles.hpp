#pragma once

#include <complex>
#include <random>
#include <vector>

#include "eisarch/matcone.hpp"
#include "eisarch/specfun.hpp"

namespace eisarch::oracle {

// Random positive definite matrix with eigenvalues in roughly [lo, hi].
ConeMatrix random_pd(std::mt19937_64& rng, int r, Field f, double lo = 0.3, double hi = 3.0);

// Least-squares slope of log|y| against log x, negated (decay exponent).
double decay_exponent(const std::vector<double>& x, const std::vector<double>& y);

// d(0) and d'(0)/d(0) from symmetric samples at +-eps, +-eps/2 with one
// Richardson step.
struct DSample {
  cplx d0;
  cplx dlog0;
};
DSample d_by_sampling(const CaseParams& ctx, double eps = 1e-3);

}  // namespace eisarch::oracle
