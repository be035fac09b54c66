#include "eisarch/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "eisarch/error.hpp"

namespace eisarch {

CaseParams CaseParams::orthogonal(int m, int r, int d) {
  if (m < 2 || r < 1 || d < 1) throw Error(ErrorKind::DomainError, "orthogonal case needs m >= 2, r >= 1, d >= 1");
  CaseParams c;
  c.kind = CaseKind::Orthogonal;
  c.iota = 1;
  c.q = 2;
  c.p = m - 2;
  c.m = m;
  c.r = r;
  c.d = d;
  c.s0 = 0.5 * (m - r - 1);
  c.kappa = 1.0 + 0.5 * (r - 1);
  c.l = {0.5 * m, 0.5 * m};
  return c;
}

CaseParams CaseParams::unitary(int m, int r, int k_chi, int d) {
  if (m < 1 || r < 1 || d < 1) throw Error(ErrorKind::DomainError, "unitary case needs m >= 1, r >= 1, d >= 1");
  if (((k_chi - m) % 2) != 0) throw Error(ErrorKind::DomainError, "k_chi must have the parity of m");
  CaseParams c;
  c.kind = CaseKind::Unitary;
  c.iota = 2;
  c.q = 1;
  c.p = m - 1;
  c.m = m;
  c.r = r;
  c.d = d;
  c.k_chi = k_chi;
  c.s0 = 0.5 * (m - r);
  c.kappa = static_cast<double>(r);
  c.l = {0.5 * (m + k_chi), 0.5 * (-m + k_chi)};
  return c;
}

std::string CaseParams::describe() const {
  std::ostringstream os;
  os << (kind == CaseKind::Orthogonal ? "orthogonal" : "unitary") << "(m=" << m << ",r=" << r
     << ",d=" << d << ")";
  return os.str();
}

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  if (z.imag() != 0.0) return false;
  const double x = z.real();
  return x <= 0.0 && std::abs(x - std::round(x)) < 1e-14;
}

// log Gamma for Re z >= 0.5.
cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorKind::PoleHit, "Gamma pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
  return lanczos_log_gamma(z);
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorKind::PoleHit, "Gamma pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  return std::exp(lanczos_log_gamma(z));
}

double digamma(double x) {
  if (x <= 0.0 && x == std::round(x)) throw Error(ErrorKind::PoleHit, "digamma pole at " + std::to_string(x));
  if (x < 0.5) return digamma(1.0 - x) - kPi / std::tan(kPi * x);
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double w = 1.0 / (x * x);
  const double series =
      w * (1.0 / 12 - w * (1.0 / 120 - w * (1.0 / 252 - w * (1.0 / 240 - w * (1.0 / 132 - w * (691.0 / 32760 - w / 12))))));
  return acc + std::log(x) - 0.5 / x - series;
}

cplx gamma_r(cplx beta, int r, int iota) {
  cplx prod = std::pow(kPi, 0.25 * iota * r * (r - 1));
  for (int k = 0; k < r; ++k) {
    const cplx z = beta - 0.5 * iota * k;
    if (is_nonpositive_integer(z))
      throw Error(ErrorKind::PoleHit, "Gamma_r factor k=" + std::to_string(k) + " sits on a pole");
    prod *= gamma(z);
  }
  return prod;
}

double gamma_r_logderiv(double beta, int r, int iota) {
  double s = 0.0;
  for (int k = 0; k < r; ++k) s += digamma(beta - 0.5 * iota * k);
  return s;
}

cplx principal_pow(cplx z, cplx w) {
  if (z == cplx(0.0)) return 0.0;
  return std::exp(w * std::log(z));
}

namespace {

double zeta_int(int k) {
  // Euler-Maclaurin with N = 20.
  const int N = 20;
  double s = 0.0;
  for (int n = 1; n < N; ++n) s += std::pow(n, -k);
  const double nn = N;
  s += std::pow(nn, 1 - k) / (k - 1) + 0.5 * std::pow(nn, -k);
  static const double b2j[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  double rising = k;  // k (k+1) ... (k+2j-2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 6; ++j) {
    s += b2j[j - 1] / fact * rising * std::pow(nn, -k - 2 * j + 1);
    rising *= (k + 2 * j - 1) * (k + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return s;
}

// (Gamma(1+a) - 1)/a for |a| <= 1/2.
double gamma1pm1_over_a(double a) {
  static const auto zetas = [] {
    std::array<double, 64> z{};
    for (int k = 2; k < 64; ++k) z[k] = zeta_int(k);
    return z;
  }();
  if (a == 0.0) return -kEulerGamma;
  double lg = -kEulerGamma * a;
  double ak = -a;  // (-a)^k
  for (int k = 2; k < 64; ++k) {
    ak *= -a;
    lg += zetas[k] * ak / k;
  }
  return std::expm1(lg) / a;
}

double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

// Gamma(a) - gamma(a, x) by the power series of the lower function.
double upper_gamma_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  double ap = a;
  for (int n = 1; n < 10000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  const double lower = sum * std::exp(-x + a * std::log(x));
  return std::tgamma(a) - lower;
}

// |a| <= 1/2, x < 1; avoids the Gamma(a) - x^a/a cancellation.
double upper_gamma_small_a(double a, double x) {
  const double lx = std::log(x);
  const double em = (a == 0.0) ? lx : std::expm1(a * lx) / a;
  double tail = 0.0;
  double xn = 1.0;
  double fact = 1.0;
  for (int n = 1; n < 60; ++n) {
    xn *= -x;
    fact *= n;
    const double t = xn / (fact * (a + n));
    tail += t;
    if (std::abs(t) < 1e-18) break;
  }
  return gamma1pm1_over_a(a) - em - std::exp(a * lx) * tail;
}

}  // namespace

double upper_gamma(double a, double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "upper_gamma needs x > 0");
  if (x >= 1.0 && x >= a + 1.0) return upper_gamma_cf(a, x);
  if (a > 0.5) return upper_gamma_series(a, x);
  if (a >= -0.5) {
    if (x < 1.0) return upper_gamma_small_a(a, x);
    return upper_gamma_series(a, x);  // a in (0, 1/2], 1 <= x < a + 1
  }
  // Downward recurrence from a + n in [-1/2, 1/2).
  const int n = static_cast<int>(std::ceil(-0.5 - a));
  double ak = a + n;
  double g = upper_gamma(ak, x);
  const double ex = std::exp(-x);
  for (int i = 0; i < n; ++i) {
    ak -= 1.0;
    g = (g - std::pow(x, ak) * ex) / ak;
  }
  return g;
}

}  // namespace eisarch
