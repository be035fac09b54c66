#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

namespace eisarch {

using cplx = std::complex<double>;

enum class Field { Real, Complex };

inline int iota_of(Field f) { return f == Field::Real ? 1 : 2; }

// Dense r x r complex matrix, r <= 4, row-major.
struct CMat {
  int r = 0;
  std::array<cplx, 16> a{};

  CMat() = default;
  explicit CMat(int n);
  static CMat identity(int n);
  static CMat diag(const std::vector<double>& d);

  cplx& operator()(int i, int j) { return a[i * 4 + j]; }
  const cplx& operator()(int i, int j) const { return a[i * 4 + j]; }

  CMat adjoint() const;
  CMat operator*(const CMat& o) const;
  CMat operator+(const CMat& o) const;
  CMat operator-(const CMat& o) const;
  CMat operator*(cplx c) const;
  cplx det() const;
  cplx trace() const;
  double norm_fro() const;
};

// Real-symmetric or complex-Hermitian matrix.
class ConeMatrix {
 public:
  ConeMatrix() = default;
  // Throws NonSelfAdjoint if m differs from its adjoint by more than
  // 1e-14 relative; the stored entries are exactly self-adjoint.
  ConeMatrix(Field field, const CMat& m);

  static ConeMatrix real(std::initializer_list<std::initializer_list<double>> rows);
  static ConeMatrix real_diag(const std::vector<double>& d);
  static ConeMatrix scalar(double x) { return real_diag({x}); }
  static ConeMatrix identity(int r, Field field = Field::Real);
  static ConeMatrix hermitian(std::initializer_list<std::initializer_list<cplx>> rows);

  int r() const { return m_.r; }
  Field field() const { return field_; }
  int iota() const { return iota_of(field_); }
  const CMat& mat() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double det() const { return m_.det().real(); }
  double trace() const { return m_.trace().real(); }
  double norm() const { return m_.norm_fro(); }

  ConeMatrix scaled(double c) const { return ConeMatrix(field_, m_ * cplx(c)); }
  // k * this * k^dagger
  ConeMatrix congruence(const CMat& k) const;

 private:
  Field field_ = Field::Real;
  CMat m_;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  CMat vectors;                // columns
  std::vector<double> offdiag_history;  // per-sweep off-diagonal norm
};

EigenResult eigen_sym_herm(const ConeMatrix& A);

CMat cholesky_pd(const ConeMatrix& A);

ConeMatrix pd_sqrt(const ConeMatrix& A);
ConeMatrix pd_inverse_sqrt(const ConeMatrix& A);

// Smallest eigenvalue, or throws NotPositiveDefinite.
double require_pd(const ConeMatrix& A, const char* what);

struct MuSpectrum {
  std::vector<double> mu;
  double delta_plus = 1.0;
  double delta_minus = 1.0;
  double tau_minus = 0.0;
  double mu_min = 0.0;
  double det_prime = 1.0;
  int n_pos = 0;
  int n_neg = 0;
  int rank = 0;
};

MuSpectrum mu_spectrum(const ConeMatrix& y, const ConeMatrix& T, double tol = 1e-10);

// Product of nonzero eigenvalues of A.
double det_prime(const ConeMatrix& A, double tol = 1e-10);

}  // namespace eisarch
