#include "eisarch/greenform.hpp"

#include <algorithm>
#include <cmath>

#include "eisarch/error.hpp"
#include "eisarch/specfun.hpp"

namespace eisarch {

namespace {

Vec mat_vec(const CMat& m, const Vec& x) {
  Vec y{};
  for (int i = 0; i < m.r; ++i)
    for (int j = 0; j < m.r; ++j) y[i] += m(i, j) * x[j];
  return y;
}

Vec conj(const Vec& x) {
  Vec y;
  for (int i = 0; i < 4; ++i) y[i] = std::conj(x[i]);
  return y;
}

}  // namespace

HermitianSpace::HermitianSpace(Field field, const CMat& gram) : field_(field), gram_(gram) {
  const int n = gram.r;
  if (field == Field::Real) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (gram(i, j).imag() != 0.0) throw Error(ErrorKind::DomainError, "real space needs a real Gram matrix");
  }
  const ConeMatrix G(field, gram);
  const EigenResult e = eigen_sym_herm(G);
  const int want_neg = field == Field::Real ? 2 : 1;
  if (n != want_neg + 1) throw Error(ErrorKind::DomainError, "only signature (1,2) real or (1,1) complex");
  const double scale = G.norm();
  int neg = 0, pos = 0;
  for (double l : e.values) {
    if (std::abs(l) <= 1e-12 * scale) throw Error(ErrorKind::DomainError, "degenerate Gram matrix");
    (l < 0 ? neg : pos)++;
  }
  if (pos != 1 || neg != want_neg) throw Error(ErrorKind::DomainError, "wrong signature");
  // standard order: positive direction first, then the negative ones (ascending values)
  std::vector<int> order;
  order.push_back(n - 1);
  for (int k = 0; k < n - 1; ++k) order.push_back(k);
  to_std_ = CMat(n);
  from_std_ = CMat(n);
  for (int c = 0; c < n; ++c) {
    const int k = order[c];
    const double s = std::sqrt(std::abs(e.values[k]));
    for (int i = 0; i < n; ++i) {
      to_std_(i, c) = std::conj(e.vectors(i, k)) / s;
      from_std_(c, i) = e.vectors(i, k) * s;
    }
  }
}

HermitianSpace HermitianSpace::o12() { return HermitianSpace(Field::Real, CMat::diag({1.0, -1.0, -1.0})); }
HermitianSpace HermitianSpace::u11() { return HermitianSpace(Field::Complex, CMat::diag({1.0, -1.0})); }

cplx HermitianSpace::Q(const Vec& x, const Vec& y) const {
  const Vec yy = field_ == Field::Real ? y : conj(y);
  cplx s = 0.0;
  for (int i = 0; i < gram_.r; ++i)
    for (int j = 0; j < gram_.r; ++j) s += x[i] * gram_(i, j) * yy[j];
  return s;
}

Vec HermitianSpace::frame(cplx w) const {
  Vec f{};
  if (field_ == Field::Real) {
    f[0] = 1.0 + w * w;
    f[1] = 1.0 - w * w;
    f[2] = 2.0 * w;
  } else {
    f[0] = w;
    f[1] = 1.0;
  }
  return mat_vec(to_std_, f);
}

cplx HermitianSpace::chart_coordinate(const Vec& F) const {
  const Vec f = mat_vec(from_std_, F);
  if (field_ == Field::Real) return f[2] / (f[0] + f[1]);
  return f[0] / f[1];
}

bool HermitianSpace::in_chart(cplx w) const {
  return field_ == Field::Real ? w.imag() > 0.0 : std::abs(w) < 1.0;
}

double frame_norm(const HermitianSpace& V, const Vec& F) {
  if (V.field() == Field::Real) return -0.5 * V.Q(F, conj(F)).real();
  return -V.Q(F, F).real();
}

namespace {

void check_frame(const HermitianSpace& V, const Vec& F) {
  const double n = frame_norm(V, F);
  double mag = 0.0;
  for (const cplx& c : F) mag += std::norm(c);
  if (!(n > 1e-12 * mag)) throw Error(ErrorKind::DegenerateFrame, "frame is not negative");
  if (V.field() == Field::Real && std::abs(V.Q(F, F)) > 1e-12 * mag)
    throw Error(ErrorKind::DegenerateFrame, "frame is not isotropic");
}

}  // namespace

DomainPoint chart_point(const HermitianSpace& V, cplx w) {
  if (!V.in_chart(w)) throw Error(ErrorKind::DegenerateFrame, "chart coordinate outside the domain");
  DomainPoint z{w, V.frame(w)};
  check_frame(V, z.frame);
  return z;
}

DomainPoint point_from_frame(const HermitianSpace& V, const Vec& F) {
  check_frame(V, F);
  return {V.chart_coordinate(F), F};
}

SpaceVector space_vector(const HermitianSpace& V, const Vec& coords) {
  if (V.field() == Field::Real)
    for (int i = 0; i < V.dim(); ++i)
      if (coords[i].imag() != 0.0) throw Error(ErrorKind::DomainError, "real space needs real coordinates");
  return {coords, V.Q(coords, coords).real()};
}

namespace {

double h_of(const HermitianSpace& V, const Vec& F, const Vec& v) {
  return std::norm(V.Q(F, v)) / frame_norm(V, F);
}

}  // namespace

Majorant majorant_and_norm(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V) {
  check_frame(V, z.frame);
  Majorant out;
  out.h = h_of(V, z.frame, v.coords);
  // Q-orthogonal projection onto the negative subspace of z
  std::vector<Vec> basis;
  if (V.field() == Field::Real) {
    Vec re{}, im{};
    for (int i = 0; i < 4; ++i) {
      re[i] = z.frame[i].real();
      im[i] = z.frame[i].imag();
    }
    basis = {re, im};
  } else {
    basis = {z.frame};
  }
  const int k = int(basis.size());
  cplx g[2][2], rhs[2];
  for (int i = 0; i < k; ++i) {
    rhs[i] = V.Q(v.coords, basis[i]);
    for (int j = 0; j < k; ++j) g[i][j] = V.Q(basis[j], basis[i]);
  }
  cplx c[2];
  if (k == 1) {
    c[0] = rhs[0] / g[0][0];
  } else {
    const cplx det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    c[0] = (rhs[0] * g[1][1] - g[0][1] * rhs[1]) / det;
    c[1] = (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det;
  }
  Vec neg{}, perp{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < k; ++j) neg[i] += c[j] * basis[j][i];
    perp[i] = v.coords[i] - neg[i];
  }
  out.Qz = V.Q(perp, perp).real() - V.Q(neg, neg).real();
  return out;
}

double green_from_x(double x, double rho) {
  if (rho < 0.0) throw Error(ErrorKind::DomainError, "rho must be nonnegative");
  if (rho == 0.0) return upper_gamma(0.0, x);
  return std::pow(x, rho) * upper_gamma(-rho, x);
}

double green_rank1(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V, double rho) {
  bool zero = true;
  for (const cplx& c : v.coords) zero = zero && c == cplx(0.0);
  if (zero) throw Error(ErrorKind::ZeroVector, "v = 0");
  const double h = h_of(V, z.frame, v.coords);
  if (h <= 1e-300) throw Error(ErrorKind::OnDivisor, "z lies on D_v");
  return green_from_x(2.0 * kPi * h, rho);
}

namespace {

// real-valued function on the chart, evaluated through the frame
template <class F>
double laplacian(F&& f, cplx w, double d) {
  const cplx dx(d, 0.0), dy(0.0, d);
  return (f(w + dx) + f(w - dx) + f(w + dy) + f(w - dy) - 4.0 * f(w)) / (d * d);
}

template <class F>
double grad_sq(F&& f, cplx w, double d) {
  const cplx dx(d, 0.0), dy(0.0, d);
  const double gx = (f(w + dx) - f(w - dx)) / (2.0 * d);
  const double gy = (f(w + dy) - f(w - dy)) / (2.0 * d);
  return gx * gx + gy * gy;
}

struct ChartFns {
  const HermitianSpace& V;
  Vec v;
  double h(cplx w) const { return h_of(V, V.frame(w), v); }
  double log_hE(cplx w) const { return std::log(frame_norm(V, V.frame(w))); }
};

// phi^o coefficient: exp(-2 pi h)(|grad h|^2/(2h) - Omega); Omega = -Lap log h_E / (4 pi)
double phi_o(const ChartFns& c, cplx w, double d, double* omega_out = nullptr) {
  const double omega = -laplacian([&](cplx u) { return c.log_hE(u); }, w, d) / (4.0 * kPi);
  if (omega_out) *omega_out = omega;
  const double h = c.h(w);
  const double kin = h > 0.0 ? grad_sq([&](cplx u) { return c.h(u); }, w, d) / (2.0 * h) : 0.0;
  return std::exp(-2.0 * kPi * h) * (kin - omega);
}

}  // namespace

KMForm km_form_chart(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V, double h_grid) {
  ChartFns c{V, v.coords};
  const double h = c.h(z.w);
  bool zero = true;
  for (const cplx& x : v.coords) zero = zero && x == cplx(0.0);
  if (!zero && h <= 1e-300) throw Error(ErrorKind::OnDivisor, "z lies on D_v");
  KMForm out;
  const double po = phi_o(c, z.w, h_grid, &out.omega_E);
  out.phi2 = std::exp(-kPi * v.qvv) * po;
  return out;
}

std::vector<cplx> divisor_in_chart(const SpaceVector& v, const HermitianSpace& V) {
  std::vector<cplx> out;
  // s_v(frame(w)) is polynomial in w: collect it by sampling
  auto s = [&](cplx w) { return V.Q(V.frame(w), v.coords); };
  if (V.field() == Field::Real) {
    const cplx c0 = s(0.0), c1p = s(1.0), c1m = s(-1.0);
    const cplx a = 0.5 * (c1p + c1m) - c0, b = 0.5 * (c1p - c1m);
    if (std::abs(a) > 1e-300) {
      const cplx disc = std::sqrt(b * b - 4.0 * a * c0);
      for (const cplx r : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)})
        if (r.imag() > 1e-12) out.push_back(r);
    } else if (std::abs(b) > 1e-300) {
      const cplx r = -c0 / b;
      if (r.imag() > 1e-12) out.push_back(r);
    }
  } else {
    const cplx c0 = s(0.0), c1 = s(1.0) - c0;
    if (std::abs(c1) > 1e-300) {
      const cplx r = -c0 / c1;
      if (std::abs(r) < 1.0) out.push_back(r);
    }
  }
  return out;
}

namespace {

struct GridSweep {
  double max_res = 0.0;
  int points = 0, excluded = 0;
  std::vector<GreenRow> rows;
};

GridSweep sweep(const ChartFns& c, const std::vector<cplx>& nodes, const std::vector<cplx>& divisor,
                double excl, double d, double qvv, bool keep_rows) {
  GridSweep out;
  auto g = [&](cplx u) { return green_from_x(2.0 * kPi * c.h(u)); };
  for (const cplx w : nodes) {
    bool skip = false;
    for (const cplx p : divisor) skip = skip || std::abs(w - p) < excl;
    if (skip) {
      ++out.excluded;
      continue;
    }
    const double ddc = laplacian(g, w, d) / (4.0 * kPi);
    const double res = std::abs(ddc - phi_o(c, w, d));
    out.max_res = std::max(out.max_res, res);
    ++out.points;
    if (keep_rows) out.rows.push_back({w, g(w), res});
  }
  (void)qvv;
  return out;
}

}  // namespace

GreenReport greens_identity_check(const SpaceVector& v, const HermitianSpace& V, const ChartGrid& grid,
                                  double h_grid) {
  if (!(h_grid > 0.0) || grid.n < 2) throw Error(ErrorKind::DomainError, "bad grid");
  ChartGrid G = grid;
  if (G.re_lo == G.re_hi) {
    if (V.field() == Field::Real) {
      G.re_lo = -1.0, G.re_hi = 1.0, G.im_lo = 0.5, G.im_hi = 2.0;
    } else {
      G.re_lo = -0.6, G.re_hi = 0.6, G.im_lo = -0.6, G.im_hi = 0.6;
    }
  }
  const double excl = G.exclusion > 0.0 ? std::max(G.exclusion, 5.0 * h_grid) : std::max(5.0 * h_grid, 0.3);
  std::vector<cplx> nodes;
  for (int i = 0; i < G.n; ++i)
    for (int j = 0; j < G.n; ++j) {
      const cplx w(G.re_lo + (G.re_hi - G.re_lo) * i / (G.n - 1), G.im_lo + (G.im_hi - G.im_lo) * j / (G.n - 1));
      if (V.in_chart(w + cplx(h_grid, h_grid)) && V.in_chart(w - cplx(h_grid, h_grid))) nodes.push_back(w);
    }
  const std::vector<cplx> div = divisor_in_chart(v, V);
  const ChartFns c{V, v.coords};
  const GridSweep a = sweep(c, nodes, div, excl, h_grid, v.qvv, true);
  const GridSweep b = sweep(c, nodes, div, excl, 0.5 * h_grid, v.qvv, false);
  GreenReport r;
  r.residual = a.max_res;
  r.residual_half = b.max_res;
  r.order = b.max_res > 0.0 ? std::log2(a.max_res / b.max_res) : 0.0;
  r.points = a.points;
  r.excluded = a.excluded;
  r.exclusion = excl;
  r.rows = a.rows;
  return r;
}

double transgression_check(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V, double t,
                           double h_grid, double h_t) {
  if (!(t > 0.0) || !(h_grid > 0.0) || !(h_t > 0.0) || h_t >= t)
    throw Error(ErrorKind::DomainError, "need t > h_t > 0 and h_grid > 0");
  const ChartFns c{V, v.coords};
  bool zero = true;
  for (const cplx& x : v.coords) zero = zero && x == cplx(0.0);
  if (!zero && c.h(z.w) <= 1e-300) throw Error(ErrorKind::OnDivisor, "z lies on D_v");
  const double lhs =
      laplacian([&](cplx u) { return std::exp(-2.0 * kPi * t * c.h(u)); }, z.w, h_grid) / (4.0 * kPi);
  auto phi_t = [&](double tt) {
    Vec s = v.coords;
    for (auto& x : s) x *= std::sqrt(tt);
    return phi_o(ChartFns{V, s}, z.w, h_grid);
  };
  const double dphi = (phi_t(t + h_t) - phi_t(t - h_t)) / (2.0 * h_t);
  return std::abs(lhs + t * dphi);
}

}  // namespace eisarch
