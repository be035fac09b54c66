#pragma once

#include <complex>

#include "eisarch/matcone.hpp"
#include "eisarch/quadrature.hpp"

namespace eisarch {

// kappa = 1 + (iota/2)(r - 1)
inline double kappa_of(int r, int iota) { return 1.0 + 0.5 * iota * (r - 1); }

// g carries r and the field (iota).
struct OmegaRequest {
  ConeMatrix g;
  cplx alpha = 0.0;
  cplx beta = 0.0;
  QuadConfig quad;
};

struct OmegaValue {
  cplx value = 0.0;
  double error_estimate = 0.0;
  bool continued = false;
  int N = 0;
};

// Direct cone integral; needs Re beta > kappa - 1.
OmegaValue omega_convergent(const OmegaRequest& req);

// Recurrence with N applications of Delta, 1 <= N <= 4, N > Re alpha - 1.
// h_factor = 0 picks the default relative step.
OmegaValue omega_continued(const OmegaRequest& req, int N, double h_factor = 0.0);

struct OmegaPlan {
  bool continued = false;
  int N = 0;
};

// Convergent when Re beta clears kappa - 1 by 1/4; otherwise the smallest N
// placing the inner function 1/4 inside its convergent region.
OmegaPlan omega_plan(int r, int iota, double max_re_alpha, double min_re_beta);

OmegaValue omega_eval(const OmegaRequest& req, const OmegaPlan& plan);
OmegaValue omega(const OmegaRequest& req);

// d/ds of omega(g; alpha + (iota/2) t, beta + (iota/2) t) at t = 0 by a
// central difference with one Richardson halving.
OmegaValue omega_ds(const OmegaRequest& req, double h_s = 1e-3);

}  // namespace eisarch
