#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "eisarch/matcone.hpp"

namespace eisarch {

// Nodes per axis of the fine tensor grid; 0 picks a default from (r, field).
// Odd counts are used so every other node forms the coarse grid.
struct QuadConfig {
  int nodes_diag = 0;
  int nodes_offdiag = 0;
  double tolerance = 1e-6;
};

QuadConfig resolved_quad(const QuadConfig& q, int r, Field field, bool shifted);

// Integrand on the cone N+ of r x r positive matrices:
//   exp(-tr(M x)) det(x + G)^a det(x)^b
// M positive definite; the det(x + G) factor is skipped when has_shift is false.
struct ConeIntegrand {
  int r = 1;
  Field field = Field::Real;
  CMat M;
  CMat G;
  bool has_shift = false;
  cplx a = 0.0;
  cplx b = 0.0;
};

struct QuadResult {
  cplx value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t points = 0;
};

// Tensor double-exponential quadrature over x = L L^dagger, L lower
// triangular with log-parametrized positive diagonal. The error estimate
// compares against the every-other-node subgrid; the rule converges
// exponentially, so a relative discrepancy e maps to min(e, 1e3 e^2)
// (plus a rounding floor). Does not throw on tolerance.
QuadResult cone_integrate(const ConeIntegrand& f, const QuadConfig& q);

// Adaptive Gauss-Kronrod (7/15) on [a, b] for complex integrands.
struct GKResult {
  cplx value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};
GKResult gk15_adaptive(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                       int max_depth = 30);

}  // namespace eisarch
