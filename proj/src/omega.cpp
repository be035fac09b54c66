#include "eisarch/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "eisarch/error.hpp"
#include "eisarch/finite_difference.hpp"
#include "eisarch/specfun.hpp"

namespace eisarch {

namespace {

void check_request(const OmegaRequest& req) {
  if (req.g.r() < 1 || req.g.r() > 3) throw Error(ErrorKind::Unsupported, "omega supports r = 1..3");
  if (!(req.quad.tolerance >= 1e-12 && req.quad.tolerance <= 1e-4))
    throw Error(ErrorKind::DomainError, "quadrature tolerance must lie in [1e-12, 1e-4]");
  require_pd(req.g, "g");
}

// int_{N+} e^{-tr x} det(x + g)^a det(x)^b dx
QuadResult shifted_integral(const CMat& g, Field field, cplx a, cplx b, const QuadConfig& q) {
  ConeIntegrand f;
  f.r = g.r;
  f.field = field;
  f.M = CMat::identity(g.r);
  f.G = g;
  f.has_shift = a != cplx(0.0);
  f.a = a;
  f.b = b;
  return cone_integrate(f, q);
}

}  // namespace

OmegaValue omega_convergent(const OmegaRequest& req) {
  check_request(req);
  const int r = req.g.r(), iota = req.g.iota();
  const double kappa = kappa_of(r, iota);
  if (!(req.beta.real() > kappa - 1.0))
    throw Error(ErrorKind::OutOfConvergenceRegion, "Re beta must exceed kappa - 1");
  // x -> g^{-1/2} x g^{-1/2} moves g into the det(x + g) factor.
  const QuadResult q = shifted_integral(req.g.mat(), req.g.field(), req.alpha - kappa, req.beta - kappa, req.quad);
  const double rel = q.error_estimate / std::max(std::abs(q.value), 1e-300);
  if (rel > req.quad.tolerance)
    throw Error(ErrorKind::QuadratureNotConverged, "cone quadrature estimate " + std::to_string(rel), rel);
  const cplx pref = std::exp((kappa - req.alpha) * std::log(req.g.det())) / gamma_r(req.beta, r, iota);
  OmegaValue out;
  out.value = pref * q.value;
  out.error_estimate = std::abs(pref) * q.error_estimate;
  return out;
}

OmegaValue omega_continued(const OmegaRequest& req, int N, double h_factor) {
  check_request(req);
  const int r = req.g.r(), iota = req.g.iota();
  const double kappa = kappa_of(r, iota);
  if (N < 1 || N > 4) throw Error(ErrorKind::Unsupported, "recurrence depth must be 1..4, got " + std::to_string(N));
  if (!(N > req.alpha.real() - 1.0)) throw Error(ErrorKind::DomainError, "need N > Re alpha - 1");

  // Inner omega(g; kappa - beta, kappa - alpha + N) in scaled form; the
  // det(g)^{-beta} factor cancels, leaving F = I(g) / Gamma_r(beta~).
  const cplx a = -req.beta;
  const cplx b = cplx(N) - req.alpha;
  const cplx beta_inner = kappa - req.alpha + static_cast<double>(N);
  const cplx inv_gamma = 1.0 / gamma_r(beta_inner, r, iota);
  double worst_quad = 0.0;
  // With a = 0 the integrand does not depend on the stencil point.
  std::optional<QuadResult> memo;
  const std::function<cplx(const CMat&)> F = [&](const CMat& x) {
    if (a == cplx(0.0) && !memo) memo = shifted_integral(x, req.g.field(), a, b, req.quad);
    const QuadResult q = memo ? *memo : shifted_integral(x, req.g.field(), a, b, req.quad);
    worst_quad = std::max(worst_quad, q.error_estimate / std::max(std::abs(q.value), 1e-300));
    return q.value * inv_gamma;
  };

  const MatrixCoords coords(r, req.g.field());
  const DiffPoly op = power(conjugated_delta(coords), N);
  const int order = op.max_order();
  const double lam_min = require_pd(req.g, "g");
  // Three step levels and two Richardson passes (error O(h^6)); the step
  // balances that against rounding noise amplified by h^-order.
  const double c = h_factor > 0.0 ? h_factor : std::pow(std::pow(4.0, order) * 1e-16, 1.0 / (order + 6));
  const double h = c * lam_min;
  const cplx A1 = apply_diff_poly(op, coords, F, req.g.mat(), h);
  const cplx A2 = apply_diff_poly(op, coords, F, req.g.mat(), 0.5 * h);
  const cplx A3 = apply_diff_poly(op, coords, F, req.g.mat(), 0.25 * h);
  const cplx R1 = (4.0 * A2 - A1) / 3.0;
  const cplx R2 = (4.0 * A3 - A2) / 3.0;
  const cplx R = (16.0 * R2 - R1) / 15.0;
  if (worst_quad > req.quad.tolerance)
    throw Error(ErrorKind::QuadratureNotConverged, "inner cone quadrature estimate " + std::to_string(worst_quad),
                worst_quad);

  const cplx pref = ((r * N) % 2 ? -1.0 : 1.0) * std::exp(req.beta * std::log(req.g.det()));
  OmegaValue out;
  out.value = pref * R;
  out.error_estimate = std::abs(pref) * std::abs(R - R2);
  out.continued = true;
  out.N = N;
  if (!(out.error_estimate <= 1e-3 * std::abs(out.value)))
    throw Error(ErrorKind::StepUnderflow, "finite-difference extrapolation did not stabilize",
                out.error_estimate / std::max(std::abs(out.value), 1e-300));
  return out;
}

OmegaPlan omega_plan(int r, int iota, double max_re_alpha, double min_re_beta) {
  const double kappa = kappa_of(r, iota);
  OmegaPlan p;
  if (min_re_beta - (kappa - 1.0) >= 0.25) return p;
  p.continued = true;
  p.N = std::max(1, static_cast<int>(std::ceil(max_re_alpha - 0.75)));
  if (p.N > 4)
    throw Error(ErrorKind::Unsupported, "parameter point needs recurrence depth " + std::to_string(p.N) + " > 4");
  return p;
}

OmegaValue omega_eval(const OmegaRequest& req, const OmegaPlan& plan) {
  return plan.continued ? omega_continued(req, plan.N) : omega_convergent(req);
}

OmegaValue omega(const OmegaRequest& req) {
  // det(x + g)^0: the integral is the normalizing one
  if (req.alpha == cplx(kappa_of(req.g.r(), req.g.iota()))) {
    check_request(req);
    OmegaValue one;
    one.value = 1.0;
    return one;
  }
  return omega_eval(req, omega_plan(req.g.r(), req.g.iota(), req.alpha.real(), req.beta.real()));
}

OmegaValue omega_ds(const OmegaRequest& req, double h_s) {
  const double half_iota = 0.5 * req.g.iota();
  const double span = half_iota * h_s;
  const OmegaPlan plan =
      omega_plan(req.g.r(), req.g.iota(), req.alpha.real() + span, req.beta.real() - span);
  auto at = [&](double t) {
    OmegaRequest q = req;
    q.alpha += half_iota * t;
    q.beta += half_iota * t;
    return omega_eval(q, plan);
  };
  const OmegaValue p1 = at(h_s), m1 = at(-h_s), p2 = at(0.5 * h_s), m2 = at(-0.5 * h_s);
  const cplx D1 = (p1.value - m1.value) / (2.0 * h_s);
  const cplx D2 = (p2.value - m2.value) / h_s;
  OmegaValue out;
  out.value = (4.0 * D2 - D1) / 3.0;
  out.error_estimate = std::abs(out.value - D2);
  out.continued = plan.continued;
  out.N = plan.N;
  return out;
}

}  // namespace eisarch
