#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "eisarch/matcone.hpp"
#include "eisarch/rational.hpp"
#include "eisarch/specfun.hpp"
#include "eisarch/whittaker.hpp"

namespace eisarch {

// Value and s-derivative of the finite Whittaker product at the relevant point.
struct FiniteWhittakerDatum {
  cplx value_at_s0 = 0.0;
  cplx deriv_at_s0 = 0.0;
  std::string label;
};

// Images sigma_v(T) and y_v at the d real places.
struct TotallyRealContext {
  int d = 1;
  std::vector<ConeMatrix> T;
  std::vector<ConeMatrix> y;

  static TotallyRealContext single(const ConeMatrix& T, const ConeMatrix& y);
  void validate(int r, double tol = 1e-10) const;
};

struct CoeffResult {
  cplx beta = 0.0;
  cplx kappa = 0.0;
  cplx C_T = 0.0;
  cplx C_T_deriv = 0.0;
  std::optional<double> residual;
  std::vector<std::string> flags;
};

cplx c_constant(const CaseParams& ctx, const TotallyRealContext& trc);

CoeffResult beta_kappa_nondeg(const CaseParams& ctx, const TotallyRealContext& trc,
                              const FiniteWhittakerDatum& datum);

struct DFactor {
  cplx d0 = 0.0;
  cplx dlog0 = 0.0;
};

// d(s) = 2^{-(r/2)(iota m/2 - 1) - iota s} (2 pi i)^{iota m r/2}
//        Gamma_r(iota s) / (Gamma_r(iota (s+m)/2) Gamma_r(iota s/2)) at s = 0.
DFactor d_factor(const CaseParams& ctx, int K = 4);

// Direct evaluation of d(s) away from its removable singularity.
cplx d_function(const CaseParams& ctx, cplx s);

// T rational of rank t. The caller's ctx has r = T.n; the place data in trc
// are only used for d. datum_prime describes S at rank t; datum_doubleprime is
// needed when s0 = 0.
CoeffResult beta_kappa_general(const RatMatrix& T, const CaseParams& ctx, int d,
                               const FiniteWhittakerDatum& datum_prime,
                               const std::optional<FiniteWhittakerDatum>& datum_doubleprime);

// C_T(lambda y, s) and its s-derivative at s0 (when s = s0) with the asymptote
// residual against beta_kappa_nondeg; lambda scales every y_v.
CoeffResult assemble_coefficient(const CaseParams& ctx, const TotallyRealContext& trc,
                                 const FiniteWhittakerDatum& datum, cplx s, double lambda = 1.0,
                                 const WhittakerOptions& opt = {});

}  // namespace eisarch
