#include "eisarch/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>
#include <vector>

#include "eisarch/error.hpp"
#include "eisarch/simd/cone_kernel.hpp"

namespace eisarch {

QuadConfig resolved_quad(const QuadConfig& q, int r, Field field, bool shifted) {
  QuadConfig out = q;
  const bool cx = field == Field::Complex;
  if (out.nodes_diag <= 0) out.nodes_diag = r == 1 ? 1025 : (r == 2 ? (cx ? 49 : 65) : 25);
  // Zeros of det(x + G) in the complex off-diagonal planes narrow the
  // analyticity strip, so the shifted integrand gets a finer grid.
  if (out.nodes_offdiag <= 0) out.nodes_offdiag = r == 2 ? (cx ? (shifted ? 81 : 33) : (shifted ? 97 : 33)) : 25;
  out.nodes_diag |= 1;
  out.nodes_offdiag |= 1;
  return out;
}

namespace {

struct Axis {
  int row = 0, col = 0;
  bool imag_part = false;  // unitary off-diagonal: imaginary coordinate
  std::vector<double> value;
  std::vector<double> log_w;
  std::vector<double> phase;
};

template <bool Complex>
class ConeSampler {
  using T = std::conditional_t<Complex, cplx, double>;

 public:
  ConeSampler(const ConeIntegrand& f, std::vector<Axis> axes)
      : f_(f), r_(f.r), axes_(std::move(axes)), kernel_(simd::active_cone_kernel()) {
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) {
        if constexpr (Complex) {
          M_[i][j] = f.M(i, j);
          G_[i][j] = f.G(i, j);
        } else {
          M_[i][j] = f.M(i, j).real();
          G_[i][j] = f.G(i, j).real();
        }
        L_[i][j] = 0.0;
      }
    has_phase_ = false;
    for (const Axis& ax : axes_)
      for (double p : ax.phase)
        if (p != 0.0) has_phase_ = true;
    det_.resize(kBatch);
    re_.resize(kBatch);
    ph_.resize(kBatch);
    coarse_.resize(kBatch);
  }

  simd::ConeSums run() {
    recurse(0, 0.0, 0.0, true);
    flush();
    return sums_;
  }

  std::size_t points() const { return points_; }

 private:
  static constexpr std::size_t kBatch = 2048;

  void set_coord(const Axis& ax, double v) {
    if constexpr (Complex) {
      if (ax.row == ax.col) {
        L_[ax.row][ax.col] = v;
      } else if (ax.imag_part) {
        L_[ax.row][ax.col] = cplx(L_[ax.row][ax.col].real(), v);
      } else {
        L_[ax.row][ax.col] = cplx(v, L_[ax.row][ax.col].imag());
      }
    } else {
      L_[ax.row][ax.col] = v;
    }
  }

  void recurse(std::size_t depth, double re, double ph, bool coarse) {
    const Axis& ax = axes_[depth];
    const std::size_t n = ax.value.size();
    if (depth + 1 == axes_.size()) {
      for (std::size_t k = 0; k < n; ++k) {
        set_coord(ax, ax.value[k]);
        emit(re + ax.log_w[k], ph + ax.phase[k], coarse && (k % 2 == 0));
      }
      return;
    }
    for (std::size_t k = 0; k < n; ++k) {
      set_coord(ax, ax.value[k]);
      recurse(depth + 1, re + ax.log_w[k], ph + ax.phase[k], coarse && (k % 2 == 0));
    }
  }

  void emit(double re, double ph, bool coarse) {
    T x[3][3];
    for (int a = 0; a < r_; ++a)
      for (int b = 0; b <= a; ++b) {
        T s = 0.0;
        for (int k = 0; k <= b; ++k) {
          if constexpr (Complex) {
            s += L_[a][k] * std::conj(L_[b][k]);
          } else {
            s += L_[a][k] * L_[b][k];
          }
        }
        x[a][b] = s;
        if constexpr (Complex) {
          x[b][a] = std::conj(s);
        } else {
          x[b][a] = s;
        }
      }
    double tr = 0.0;
    for (int a = 0; a < r_; ++a) {
      tr += std::real(M_[a][a]) * std::real(x[a][a]);
      for (int b = 0; b < a; ++b) tr += 2.0 * std::real(M_[b][a] * x[a][b]);
    }
    double det = 1.0;
    if (f_.has_shift) {
      T s[3][3]{};
      for (int a = 0; a < r_; ++a)
        for (int b = 0; b < r_; ++b) s[a][b] = x[a][b] + G_[a][b];
      if (r_ == 1) {
        det = std::real(s[0][0]);
      } else if (r_ == 2) {
        det = std::real(s[0][0] * s[1][1] - s[0][1] * s[1][0]);
      } else {
        det = std::real(s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                        s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                        s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]));
      }
    }
    det_[fill_] = det;
    re_[fill_] = re - tr;
    ph_[fill_] = ph;
    coarse_[fill_] = coarse ? 1.0 : 0.0;
    ++points_;
    if (++fill_ == kBatch) flush();
  }

  void flush() {
    if (fill_ == 0) return;
    simd::ConeBatch b;
    b.n = fill_;
    b.det_shift = f_.has_shift ? det_.data() : nullptr;
    b.re = re_.data();
    b.phase = has_phase_ ? ph_.data() : nullptr;
    b.coarse = coarse_.data();
    b.a = f_.a;
    const simd::ConeSums s = kernel_(b);
    sums_.fine += s.fine;
    sums_.coarse += s.coarse;
    sums_.abs_fine += s.abs_fine;
    fill_ = 0;
  }

  const ConeIntegrand& f_;
  int r_;
  std::vector<Axis> axes_;
  simd::ConeKernelFn kernel_;
  T M_[3][3], G_[3][3], L_[3][3];
  bool has_phase_;
  std::vector<double> det_, re_, ph_, coarse_;
  std::size_t fill_ = 0;
  std::size_t points_ = 0;
  simd::ConeSums sums_;
};

}  // namespace

QuadResult cone_integrate(const ConeIntegrand& f, const QuadConfig& q0) {
  const int r = f.r;
  if (r < 1 || r > 3) throw Error(ErrorKind::Unsupported, "cone quadrature supports r = 1..3");
  const QuadConfig q = resolved_quad(q0, r, f.field, f.has_shift);
  const bool cx = f.field == Field::Complex;
  const double bre = f.b.real(), bim = f.b.imag();
  const double a_pos = std::max(f.a.real(), 0.0);

  std::vector<Axis> axes;
  for (int i = 0; i < r; ++i) {
    // Jacobian exponent of l_ii, plus one for dl = l du.
    const double J = cx ? 2.0 * (r - i) - 1.0 : static_cast<double>(r - i);
    const double p = J + 1.0 + 2.0 * bre;
    if (!(p > 0.0)) throw Error(ErrorKind::OutOfConvergenceRegion, "cone integral diverges at x -> 0");
    const double mu = f.M(i, i).real();
    const double p_eff = p + 2.0 * (f.has_shift ? a_pos : 0.0);
    const double center = 0.5 * std::log(p_eff / (2.0 * mu));
    const double t_lo = -std::asinh(45.0 / p);
    const double t_hi = std::asinh(0.5 * std::log(80.0 / p_eff + 10.0) + 1.0);
    const int n = q.nodes_diag;
    const double h = (t_hi - t_lo) / (n - 1);
    Axis ax;
    ax.row = ax.col = i;
    for (int k = 0; k < n; ++k) {
      const double t = t_lo + k * h;
      const double u = center + std::sinh(t);
      ax.value.push_back(std::exp(u));
      ax.log_w.push_back(std::log(h * std::cosh(t)) + p * u);
      ax.phase.push_back(2.0 * bim * u);
    }
    axes.push_back(std::move(ax));
  }
  for (int i = 1; i < r; ++i)
    for (int j = 0; j < i; ++j)
      for (int part = 0; part < (cx ? 2 : 1); ++part) {
        const double mu = f.M(i, i).real();
        const double L = std::sqrt((50.0 + 6.0 * a_pos) / mu);
        const int n = q.nodes_offdiag;
        const double h = 2.0 * L / (n - 1);
        Axis ax;
        ax.row = i;
        ax.col = j;
        ax.imag_part = part == 1;
        for (int k = 0; k < n; ++k) {
          ax.value.push_back(-L + k * h);
          ax.log_w.push_back(std::log(h));
          ax.phase.push_back(0.0);
        }
        axes.push_back(std::move(ax));
      }
  // Innermost axis last: put an off-diagonal coordinate there when present.
  if (axes.size() > static_cast<std::size_t>(r)) std::swap(axes[r - 1], axes.back());

  simd::ConeSums s;
  std::size_t points = 0;
  if (cx) {
    ConeSampler<true> sampler(f, std::move(axes));
    s = sampler.run();
    points = sampler.points();
  } else {
    ConeSampler<false> sampler(f, std::move(axes));
    s = sampler.run();
    points = sampler.points();
  }
  const int dims = cx ? r * r : r * (r + 1) / 2;
  const double pref = std::ldexp(1.0, r);
  QuadResult out;
  out.value = pref * s.fine;
  const cplx coarse = pref * std::ldexp(1.0, dims) * s.coarse;
  const double mag = std::max(std::abs(out.value), 1e-300);
  const double rel = std::abs(out.value - coarse) / mag;
  const double est_rel = std::min(rel, 1e3 * rel * rel);
  out.error_estimate = mag * est_rel + 1e-15 * pref * s.abs_fine * std::sqrt(static_cast<double>(dims));
  out.points = points;
  return out;
}

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk_panel(const std::function<cplx(double)>& f, double a, double b, cplx& k, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx kr = kWgk[7] * f(c);
  cplx g = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const cplx f1 = f(c - h * kXgk[i]), f2 = f(c + h * kXgk[i]);
    kr += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
  }
  k = h * kr;
  err = std::abs(h * (kr - g));
}

void gk_recurse(const std::function<cplx(double)>& f, double a, double b, double tol, int depth,
                GKResult& acc) {
  cplx k;
  double err;
  gk_panel(f, a, b, k, err);
  if (err <= tol || depth == 0 || err <= 1e-15 * std::abs(k)) {
    acc.value += k;
    acc.error_estimate += err;
    ++acc.panels;
    return;
  }
  const double m = 0.5 * (a + b);
  gk_recurse(f, a, m, 0.5 * tol, depth - 1, acc);
  gk_recurse(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

GKResult gk15_adaptive(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                       int max_depth) {
  GKResult acc;
  gk_recurse(f, a, b, abs_tol, max_depth, acc);
  return acc;
}

}  // namespace eisarch
