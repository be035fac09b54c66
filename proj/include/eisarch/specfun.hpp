#pragma once

#include <complex>
#include <string>
#include <utility>

namespace eisarch {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

enum class CaseKind { Orthogonal, Unitary };

struct CaseParams {
  CaseKind kind = CaseKind::Orthogonal;
  int iota = 1;
  int p = 0;
  int q = 2;
  int m = 2;
  int r = 1;
  int d = 1;
  int k_chi = 0;
  double s0 = 0.0;
  double kappa = 1.0;
  // Scalar weight m/2 (orthogonal) or the pair ((m+k)/2, (-m+k)/2).
  std::pair<double, double> l{0.0, 0.0};

  // q = 2; p = m - 2 when m > 2.
  static CaseParams orthogonal(int m, int r, int d = 1);
  // q = 1, p = m - 1; k_chi must have the parity of m.
  static CaseParams unitary(int m, int r, int k_chi, int d = 1);
  static CaseParams unitary(int m, int r) { return unitary(m, r, m % 2); }

  // ι·m/2
  double weight() const { return 0.5 * iota * m; }
  std::string describe() const;
};

cplx log_gamma(cplx z);
cplx gamma(cplx z);
double digamma(double x);

cplx gamma_r(cplx beta, int r, int iota);
double gamma_r_logderiv(double beta, int r, int iota);

double upper_gamma(double a, double x);
inline double expint_e1(double x) { return upper_gamma(0.0, x); }

// z^w on the principal branch.
cplx principal_pow(cplx z, cplx w);

}  // namespace eisarch
