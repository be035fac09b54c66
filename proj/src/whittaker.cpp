#include "eisarch/whittaker.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include "eisarch/error.hpp"
#include "eisarch/omega.hpp"

namespace eisarch {

const char* to_string(WhittakerBranch b) {
  switch (b) {
    case WhittakerBranch::PosDef: return "posdef";
    case WhittakerBranch::IndefiniteShape: return "indefinite-shape";
    case WhittakerBranch::Oracle: return "oracle";
  }
  return "?";
}

namespace {

const cplx kMinus2PiI(0.0, -2.0 * kPi);

void check_args(const ConeMatrix& T, const ConeMatrix& y, const CaseParams& ctx) {
  if (T.r() != ctx.r || y.r() != ctx.r)
    throw Error(ErrorKind::DomainError, "T and y must be r x r with r = " + std::to_string(ctx.r));
  if (T.iota() != ctx.iota || y.iota() != ctx.iota)
    throw Error(ErrorKind::DomainError, "matrix field does not match the case");
  require_pd(y, "y");
}

enum class Sig { Pos, Neg, Mixed };

Sig signature(const ConeMatrix& T, const ConeMatrix& y, double tol) {
  const MuSpectrum sp = mu_spectrum(y, T, tol);
  if (sp.rank < T.r()) throw Error(ErrorKind::SingularT, "T is singular");
  if (sp.n_neg == 0) return Sig::Pos;
  if (sp.n_pos == 0) return Sig::Neg;
  return Sig::Mixed;
}

ConeMatrix negated(const ConeMatrix& T) { return T.scaled(-1.0); }

// 4 pi S y S with S = H^{1/2}
ConeMatrix omega_argument(const ConeMatrix& H, const ConeMatrix& y) {
  const ConeMatrix S = pd_sqrt(H);
  return y.congruence(S.mat()).scaled(4.0 * kPi);
}

struct Fixed {
  std::optional<OmegaPlan> plan;
};

WhittakerValue eval_posdef(const ConeMatrix& T, const ConeMatrix& y, cplx s, const CaseParams& ctx,
                           const WhittakerOptions& opt, const Fixed& fx) {
  const int r = ctx.r;
  const double iota = ctx.iota, kappa = ctx.kappa;
  const cplx beta = 0.5 * iota * (s - ctx.s0);
  const cplx a = beta + ctx.weight();
  OmegaRequest req{omega_argument(T, y), a, beta, opt.quad};
  const OmegaValue w = fx.plan ? omega_eval(req, *fx.plan) : omega(req);
  const cplx pre = principal_pow(kMinus2PiI, iota * r * ctx.m * 0.5) *
                   std::exp(double(r) * beta * std::log(kPi) - 0.5 * r * (kappa - 1.0) * std::log(2.0) +
                            (a - kappa) * std::log(T.det())) /
                   gamma_r(a, r, ctx.iota);
  return {pre * w.value, std::abs(pre) * w.error_estimate, WhittakerBranch::PosDef};
}

WhittakerValue eval_negdef(const ConeMatrix& T, const ConeMatrix& y, cplx s, const CaseParams& ctx,
                           const WhittakerOptions& opt, const Fixed& fx) {
  const int r = ctx.r;
  const double kappa = ctx.kappa;
  const cplx beta = 0.5 * double(ctx.iota) * (s - ctx.s0);
  if (beta == cplx(0.0)) return {0.0, 0.0, WhittakerBranch::IndefiniteShape};
  const cplx a = beta + ctx.weight();
  const ConeMatrix H = negated(T);
  OmegaRequest req{omega_argument(H, y), beta, a, opt.quad};
  const OmegaValue w = fx.plan ? omega_eval(req, *fx.plan) : omega(req);
  cplx inv_gq;
  try {
    inv_gq = 1.0 / gamma_r(beta, r, ctx.iota);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PoleHit) throw;
    return {0.0, 0.0, WhittakerBranch::IndefiniteShape};
  }
  // delta_- = det(y) det(H); tr(yH) through the congruence.
  const double dety = y.det(), detH = H.det();
  const double tr_yH = (y.mat() * H.mat()).trace().real();
  const cplx pre = std::exp((-beta - ctx.weight() + kappa) * std::log(dety) +
                            (beta - kappa) * std::log(dety * detH) - 4.0 * kPi * tr_yH) *
                   inv_gq;
  return {pre * w.value, std::abs(pre) * w.error_estimate, WhittakerBranch::IndefiniteShape};
}

WhittakerValue eval_any(const ConeMatrix& T, const ConeMatrix& y, cplx s, const CaseParams& ctx,
                        const WhittakerOptions& opt, const Fixed& fx) {
  check_args(T, y, ctx);
  switch (signature(T, y, opt.rank_tol)) {
    case Sig::Pos: return eval_posdef(T, y, s, ctx, opt, fx);
    case Sig::Neg: return eval_negdef(T, y, s, ctx, opt, fx);
    case Sig::Mixed:
      if (s == cplx(ctx.s0)) return {0.0, 0.0, WhittakerBranch::IndefiniteShape};
      throw Error(ErrorKind::Unsupported, "mixed-signature T is only available at s = s0");
  }
  return {};
}

}  // namespace

WhittakerValue normalized_whittaker(const ConeMatrix& T, const ConeMatrix& y, cplx s, const CaseParams& ctx,
                                    const WhittakerOptions& opt) {
  return eval_any(T, y, s, ctx, opt, {});
}

cplx negative_definite_normalizer(cplx beta, const CaseParams& ctx) {
  if (ctx.r != 1) throw Error(ErrorKind::Unsupported, "normalizer derived for r = 1 only");
  const cplx d = -ctx.weight();  // beta - a
  return std::exp(cplx(0.0, kPi) * d) * principal_pow(kMinus2PiI, d) * std::exp((beta - d) * std::log(kPi));
}

cplx whittaker_s0_value(const ConeMatrix& T, const CaseParams& ctx) {
  if (T.r() != ctx.r) throw Error(ErrorKind::DomainError, "T must be r x r");
  require_pd(T, "T");
  const int r = ctx.r;
  const double iota = ctx.iota;
  return principal_pow(kMinus2PiI, iota * r * ctx.m * 0.5) /
         (std::pow(2.0, 0.5 * r * (ctx.kappa - 1.0)) * gamma_r(ctx.weight(), r, ctx.iota)) *
         std::pow(T.det(), iota * ctx.s0);
}

WhittakerValue whittaker_s0_deriv(const ConeMatrix& T, const ConeMatrix& y, const CaseParams& ctx, double h_s,
                                  const WhittakerOptions& opt) {
  if (!(h_s >= 1e-5 && h_s <= 1e-2)) throw Error(ErrorKind::DomainError, "h_s must lie in [1e-5, 1e-2]");
  check_args(T, y, ctx);
  const Sig sig = signature(T, y, opt.rank_tol);
  if (sig == Sig::Mixed) throw Error(ErrorKind::Unsupported, "mixed-signature T: derivative not available");
  const double span = 0.5 * ctx.iota * h_s;
  Fixed fx;
  fx.plan = sig == Sig::Pos ? omega_plan(ctx.r, ctx.iota, ctx.weight() + span, -span)
                            : omega_plan(ctx.r, ctx.iota, span, ctx.weight() - span);
  auto at = [&](double ds) { return eval_any(T, y, ctx.s0 + ds, ctx, opt, fx); };
  const WhittakerValue p1 = at(h_s), m1 = at(-h_s), p2 = at(0.5 * h_s), m2 = at(-0.5 * h_s);
  const cplx D1 = (p1.value - m1.value) / (2.0 * h_s);
  const cplx D2 = (p2.value - m2.value) / h_s;
  WhittakerValue out;
  out.value = (4.0 * D2 - D1) / 3.0;
  const double noise = (p1.error_estimate + m1.error_estimate) / (2.0 * h_s) +
                       (p2.error_estimate + m2.error_estimate) / h_s;
  out.error_estimate = std::abs(out.value - D2) + noise;
  out.branch = sig == Sig::Pos ? WhittakerBranch::PosDef : WhittakerBranch::IndefiniteShape;
  return out;
}

cplx whittaker_deriv_asymptote(const ConeMatrix& T, const CaseParams& ctx) {
  const cplx v = whittaker_s0_value(T, ctx);
  const double logdet = ctx.r * std::log(kPi) + std::log(T.det());
  return 0.5 * ctx.iota * v * (logdet - gamma_r_logderiv(ctx.weight(), ctx.r, ctx.iota));
}

WhittakerValue whittaker_oracle_r1(double T, double y, cplx s, const CaseParams& ctx, double rel_tol) {
  if (ctx.r != 1 || ctx.kind != CaseKind::Orthogonal || ctx.m % 2 != 0)
    throw Error(ErrorKind::DomainError, "oracle needs r = 1, orthogonal, m even");
  if (T == 0.0 || !(y > 0.0)) throw Error(ErrorKind::DomainError, "oracle needs T != 0 and y > 0");
  const double l = 0.5 * ctx.m;
  // (y/(b^2+y^2))^{(s+1)/2} e^{-il arg(b+iy)} = y^{(s+1)/2} (b+iy)^{-A} (b-iy)^{-C}
  const cplx A = 0.5 * (s + 1.0) + 0.5 * l, C = 0.5 * (s + 1.0) - 0.5 * l;
  const cplx ypow = std::exp(0.5 * (s + 1.0) * std::log(y));
  const double om = 2.0 * kPi * T;
  const cplx iy(0.0, y);

  auto phi = [&](double b) { return ypow * std::exp(-A * std::log(b + iy) - C * std::log(b - iy)); };
  auto f = [&](double b) { return phi(b) * std::exp(cplx(0.0, -om * b)); };

  // k-th derivative of phi by Leibniz on the two power factors
  auto phi_deriv = [&](double b, int k) {
    std::vector<cplx> dp(k + 1), dm(k + 1);
    cplx cp = std::exp(-A * std::log(b + iy)), cm = std::exp(-C * std::log(b - iy));
    for (int j = 0; j <= k; ++j) {
      dp[j] = cp;
      dm[j] = cm;
      cp *= (-A - double(j)) / (b + iy);
      cm *= (-C - double(j)) / (b - iy);
    }
    cplx sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      sum += binom * dp[j] * dm[k - j];
      binom = binom * (k - j) / (j + 1);
    }
    return ypow * sum;
  };

  const double sig = s.real();
  const double absT = std::abs(T);
  const double B = std::max({30.0 * y, 200.0 / (2.0 * kPi * absT),
                             30.0 * (std::abs(A) + std::abs(C) + 2.0) / (2.0 * kPi * absT)});

  // rough size of the integral of |phi|
  const double scale = std::pow(y, 0.5 * (1.0 - sig)) * (2.0 + 2.0 / std::max(sig, 0.1));
  const double width = std::min(0.25 / absT, std::max(y, 0.05));
  const int panels = int(std::ceil(2.0 * B / width));
  const double w = 2.0 * B / panels;
  const double panel_tol = 0.01 * rel_tol * scale / panels;

  cplx central = 0.0;
  double err = 0.0;
  for (int i = 0; i < panels; ++i) {
    const GKResult g = gk15_adaptive(f, -B + i * w, -B + (i + 1) * w, panel_tol, 20);
    central += g.value;
    err += g.error_estimate;
  }

  // integration-by-parts tails
  const cplx iw(0.0, om);
  cplx tail = 0.0;
  double tail_err = 0.0;
  cplx ipow = iw;
  double last = 0.0;
  for (int k = 0; k < 24; ++k) {
    const cplx term = phi_deriv(B, k) * std::exp(cplx(0.0, -om * B)) / ipow -
                      phi_deriv(-B, k) * std::exp(cplx(0.0, om * B)) / ipow;
    const double mag = std::abs(term);
    if (k > 2 && mag > last) break;
    tail += term;
    last = mag;
    tail_err = mag;
    ipow *= iw;
    if (mag < 1e-18 * scale) break;
  }

  const double norm = std::exp(-0.25 * ctx.m * std::log(y) + 2.0 * kPi * T * y);
  const double total_err = err + tail_err;
  if (tail_err > rel_tol * scale)
    throw Error(ErrorKind::OscillatoryNotConverged, "oscillatory tail did not converge", tail_err * norm);
  return {norm * (central + tail), norm * total_err, WhittakerBranch::Oracle};
}

cplx lowering_rhs(const ConeMatrix& T, const ConeMatrix& y, double t, const CaseParams& ctx,
                  const WhittakerOptions& opt) {
  if (!(t > 0.0)) throw Error(ErrorKind::DomainError, "t must be positive");
  const double h = 1e-2 * t;
  auto D = [&](double tt) { return whittaker_s0_deriv(T, y.scaled(tt), ctx, 1e-3, opt).value; };
  const cplx d1 = (D(t + h) - D(t - h)) / (2.0 * h);
  const cplx d2 = (D(t + 0.5 * h) - D(t - 0.5 * h)) / h;
  return (2.0 / ctx.iota) * t * (4.0 * d2 - d1) / 3.0;
}

}  // namespace eisarch
