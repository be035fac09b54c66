#pragma once

#include <complex>
#include <string>

#include "eisarch/matcone.hpp"
#include "eisarch/quadrature.hpp"
#include "eisarch/specfun.hpp"

namespace eisarch {

enum class WhittakerBranch { PosDef, IndefiniteShape, Oracle };
const char* to_string(WhittakerBranch b);

struct WhittakerValue {
  cplx value = 0.0;
  double error_estimate = 0.0;
  WhittakerBranch branch = WhittakerBranch::PosDef;
};

struct WhittakerOptions {
  QuadConfig quad;
  double rank_tol = 1e-10;
};

// T > 0: closed form through omega. T negative definite: the shape with the
// unspecified entire prefactor set to 1, the two-argument omega realized as
// exp(-2 pi tr(y|T|)) omega(4 pi |T|^{1/2} y |T|^{1/2}; beta, beta + iota m/2).
// Mixed signature: exactly 0 at s = s0 (the 1/Gamma_q(beta) factor),
// Unsupported elsewhere.
WhittakerValue normalized_whittaker(const ConeMatrix& T, const ConeMatrix& y, cplx s, const CaseParams& ctx,
                                    const WhittakerOptions& opt = {});

// Ratio exact/shape on the negative-definite branch; derived for r = 1.
cplx negative_definite_normalizer(cplx beta, const CaseParams& ctx);

cplx whittaker_s0_value(const ConeMatrix& T, const CaseParams& ctx);

WhittakerValue whittaker_s0_deriv(const ConeMatrix& T, const ConeMatrix& y, const CaseParams& ctx,
                                  double h_s = 1e-3, const WhittakerOptions& opt = {});

cplx whittaker_deriv_asymptote(const ConeMatrix& T, const CaseParams& ctx);

// Direct integration of the defining integral (r = 1, orthogonal, m even).
WhittakerValue whittaker_oracle_r1(double T, double y, cplx s, const CaseParams& ctx, double rel_tol = 1e-12);

cplx lowering_rhs(const ConeMatrix& T, const ConeMatrix& y, double t, const CaseParams& ctx,
                  const WhittakerOptions& opt = {});

}  // namespace eisarch
