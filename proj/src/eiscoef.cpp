#include "eisarch/eiscoef.hpp"

#include <cmath>

#include "eisarch/error.hpp"
#include "eisarch/laurent.hpp"

namespace eisarch {

TotallyRealContext TotallyRealContext::single(const ConeMatrix& T, const ConeMatrix& y) {
  return {1, {T}, {y}};
}

void TotallyRealContext::validate(int r, double tol) const {
  if (d < 1 || int(T.size()) != d || int(y.size()) != d)
    throw Error(ErrorKind::DomainError, "need d images of T and d matrices y");
  int rank = -1;
  for (int v = 0; v < d; ++v) {
    if (T[v].r() != r || y[v].r() != r) throw Error(ErrorKind::DomainError, "place data must be r x r");
    require_pd(y[v], "y_v");
    const MuSpectrum sp = mu_spectrum(y[v], T[v], tol);
    if (rank >= 0 && sp.rank != rank) throw Error(ErrorKind::DomainError, "images of T disagree in rank");
    rank = sp.rank;
  }
}

namespace {

bool totally_positive(const TotallyRealContext& trc, double tol = 1e-10) {
  for (int v = 0; v < trc.d; ++v) {
    const MuSpectrum sp = mu_spectrum(trc.y[v], trc.T[v], tol);
    if (sp.n_neg > 0 || sp.rank < trc.T[v].r()) return false;
  }
  return true;
}

void require_nonsingular(const TotallyRealContext& trc, double tol = 1e-10) {
  for (int v = 0; v < trc.d; ++v)
    if (mu_spectrum(trc.y[v], trc.T[v], tol).rank < trc.T[v].r())
      throw Error(ErrorKind::SingularT, "sigma_v(T) is singular at place " + std::to_string(v));
}

double log_norm_det(const TotallyRealContext& trc) {
  double s = 0.0;
  for (const auto& T : trc.T) s += std::log(T.det());
  return s;
}

}  // namespace

cplx c_constant(const CaseParams& ctx, const TotallyRealContext& trc) {
  trc.validate(ctx.r);
  if (!totally_positive(trc)) throw Error(ErrorKind::NotTotallyPositive, "T is not totally positive definite");
  const int r = ctx.r;
  const cplx one = principal_pow(cplx(0.0, -2.0 * kPi), ctx.iota * r * ctx.m * 0.5) /
                   (std::pow(2.0, 0.5 * r * (ctx.kappa - 1.0)) * gamma_r(ctx.weight(), r, ctx.iota));
  return std::pow(one, trc.d) * std::exp(ctx.iota * ctx.s0 * log_norm_det(trc));
}

CoeffResult beta_kappa_nondeg(const CaseParams& ctx, const TotallyRealContext& trc,
                              const FiniteWhittakerDatum& datum) {
  trc.validate(ctx.r);
  require_nonsingular(trc);
  CoeffResult out;
  if (!totally_positive(trc)) {
    out.flags.push_back("not-totally-positive");
    return out;
  }
  const cplx c = c_constant(ctx, trc);
  const double iota = ctx.iota;
  const double bracket = 0.5 * iota * trc.d * (ctx.r * std::log(kPi) - gamma_r_logderiv(ctx.weight(), ctx.r, ctx.iota)) +
                         0.5 * iota * log_norm_det(trc);
  out.beta = c * datum.value_at_s0;
  out.kappa = bracket * out.beta + c * datum.deriv_at_s0;
  return out;
}

cplx d_function(const CaseParams& ctx, cplx s) {
  const int r = ctx.r;
  const double iota = ctx.iota;
  const cplx pre = std::exp((-0.5 * r * (0.5 * iota * ctx.m - 1.0) - iota * s) * std::log(2.0)) *
                   principal_pow(cplx(0.0, 2.0 * kPi), 0.5 * iota * ctx.m * r);
  return pre * gamma_r(iota * s, r, ctx.iota) /
         (gamma_r(0.5 * iota * (s + double(ctx.m)), r, ctx.iota) * gamma_r(0.5 * iota * s, r, ctx.iota));
}

DFactor d_factor(const CaseParams& ctx, int K) {
  if (ctx.s0 != 0.0) throw Error(ErrorKind::WrongCenter, "d(s) is only defined for s0 = 0");
  const int r = ctx.r;
  const double iota = ctx.iota;
  // Gamma_r(lambda s + shift) as a series in s, with pi powers cancelling between
  // the numerator and the two denominator factors up to one pi^{iota r(r-1)/4}.
  auto gamma_r_series = [&](double lambda, double shift) {
    LaurentValue acc = LaurentValue::constant(0.0, 1.0, K);
    for (int k = 0; k < r; ++k) acc = acc * laurent_gamma(shift - 0.5 * iota * k, K).substitute(0.0, lambda);
    return acc;
  };
  const double pi_pow = 0.25 * iota * r * (r - 1);
  const cplx pre = std::exp(-0.5 * r * (0.5 * iota * ctx.m - 1.0) * std::log(2.0) - pi_pow * std::log(kPi)) *
                   principal_pow(cplx(0.0, 2.0 * kPi), 0.5 * iota * ctx.m * r);
  LaurentValue d = LaurentValue::exp_linear(0.0, -iota * std::log(2.0), K) * gamma_r_series(iota, 0.0) /
                   (gamma_r_series(0.5 * iota, 0.5 * iota * ctx.m) * gamma_r_series(0.5 * iota, 0.0));
  d = d.simplified();
  if (d.min_order() != 0) throw Error(ErrorKind::PoleHit, "d(s) is not holomorphic and nonzero at 0");
  DFactor out;
  out.d0 = pre * d.coeff(0);
  out.dlog0 = d.coeff(1) / d.coeff(0);
  return out;
}

CoeffResult beta_kappa_general(const RatMatrix& T, const CaseParams& ctx, int d,
                               const FiniteWhittakerDatum& datum_prime,
                               const std::optional<FiniteWhittakerDatum>& datum_doubleprime) {
  if (T.n != ctx.r) throw Error(ErrorKind::DomainError, "T must be r x r");
  if ((ctx.iota == 2) != T.hermitian && ctx.iota == 1)
    throw Error(ErrorKind::DomainError, "orthogonal case needs a rational symmetric T");
  const bool central = ctx.s0 == 0.0;
  if (central && !datum_doubleprime)
    throw Error(ErrorKind::MissingDoublePrimeDatum, "s0 = 0 needs the double-prime datum");
  const Reduction red = reduce_degenerate(T);
  CoeffResult out;
  if (red.discrepancy) out.flags.push_back("det-S-differs-from-det-prime");

  DFactor df;
  if (central) df = d_factor(ctx);

  if (red.rank == 0) {
    const cplx phi = datum_prime.value_at_s0;
    if (!central) {
      out.beta = phi;
      out.kappa = 0.0;
    } else {
      out.beta = 2.0 * phi;
      out.kappa = -double(d) * df.dlog0 * phi - std::pow(df.d0, d) * datum_doubleprime->deriv_at_s0;
    }
    return out;
  }

  // S at rank t, one identical image per place
  const int t = red.rank;
  CMat Sm(t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      Sm(i, j) = cplx(static_cast<double>(red.S(i, j).re), static_cast<double>(red.S(i, j).im));
  const Field f = ctx.iota == 1 ? Field::Real : Field::Complex;
  const ConeMatrix S(f, Sm);
  CaseParams sub = ctx.iota == 1 ? CaseParams::orthogonal(ctx.m, t, d) : CaseParams::unitary(ctx.m, t, ctx.k_chi, d);
  TotallyRealContext trc;
  trc.d = d;
  for (int v = 0; v < d; ++v) {
    trc.T.push_back(S);
    trc.y.push_back(ConeMatrix::identity(t, f));
  }
  const CoeffResult p = beta_kappa_nondeg(sub, trc, datum_prime);
  out.flags.insert(out.flags.end(), p.flags.begin(), p.flags.end());
  if (!central) {
    out.beta = p.beta;
    out.kappa = p.kappa;
  } else {
    const CoeffResult pp = beta_kappa_nondeg(sub, trc, *datum_doubleprime);
    out.beta = 2.0 * p.beta;
    out.kappa = p.kappa - (double(d) * df.dlog0 * p.beta + std::pow(df.d0, d) * pp.kappa);
  }
  return out;
}

CoeffResult assemble_coefficient(const CaseParams& ctx, const TotallyRealContext& trc,
                                 const FiniteWhittakerDatum& datum, cplx s, double lambda,
                                 const WhittakerOptions& opt) {
  trc.validate(ctx.r);
  require_nonsingular(trc);
  if (!(lambda > 0.0)) throw Error(ErrorKind::DomainError, "lambda must be positive");
  CoeffResult out;
  std::vector<cplx> W(trc.d), dW(trc.d);
  const bool at_s0 = s == cplx(ctx.s0);
  for (int v = 0; v < trc.d; ++v) {
    const ConeMatrix y = trc.y[v].scaled(lambda);
    W[v] = normalized_whittaker(trc.T[v], y, s, ctx, opt).value;
    if (at_s0) dW[v] = whittaker_s0_deriv(trc.T[v], y, ctx, 1e-3, opt).value;
  }
  cplx prod = 1.0;
  for (const cplx& w : W) prod *= w;
  out.C_T = prod * datum.value_at_s0;
  if (!at_s0) {
    out.flags.push_back("derivative-only-at-s0");
    return out;
  }
  cplx dprod = 0.0;
  for (int v = 0; v < trc.d; ++v) {
    cplx term = dW[v];
    for (int u = 0; u < trc.d; ++u)
      if (u != v) term *= W[u];
    dprod += term;
  }
  out.C_T_deriv = dprod * datum.value_at_s0 + prod * datum.deriv_at_s0;
  const CoeffResult bk = beta_kappa_nondeg(ctx, trc, datum);
  out.beta = bk.beta;
  out.kappa = bk.kappa;
  out.flags.insert(out.flags.end(), bk.flags.begin(), bk.flags.end());
  // log(det'(T) det(y) / det'(T y)) vanishes for nondegenerate T
  double logterm = 0.0;
  for (int v = 0; v < trc.d; ++v) {
    const ConeMatrix y = trc.y[v].scaled(lambda);
    const MuSpectrum sp = mu_spectrum(y, trc.T[v]);
    logterm += std::log(std::abs(det_prime(trc.T[v])) * y.det() / std::abs(sp.det_prime));
  }
  out.residual = std::abs(out.C_T_deriv - out.kappa - 0.5 * ctx.iota * out.beta * logterm);
  return out;
}

}  // namespace eisarch
