#include "eisarch/matcone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eisarch/error.hpp"

namespace eisarch {

CMat::CMat(int n) : r(n) {}

CMat CMat::identity(int n) {
  CMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diag(const std::vector<double>& d) {
  CMat m(static_cast<int>(d.size()));
  for (int i = 0; i < m.r; ++i) m(i, i) = d[i];
  return m;
}

CMat CMat::adjoint() const {
  CMat m(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

CMat CMat::operator*(const CMat& o) const {
  CMat m(r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const cplx a_ik = (*this)(i, k);
      for (int j = 0; j < r; ++j) m(i, j) += a_ik * o(k, j);
    }
  return m;
}

CMat CMat::operator+(const CMat& o) const {
  CMat m(r);
  for (int i = 0; i < 16; ++i) m.a[i] = a[i] + o.a[i];
  return m;
}

CMat CMat::operator-(const CMat& o) const {
  CMat m(r);
  for (int i = 0; i < 16; ++i) m.a[i] = a[i] - o.a[i];
  return m;
}

CMat CMat::operator*(cplx c) const {
  CMat m(r);
  for (int i = 0; i < 16; ++i) m.a[i] = a[i] * c;
  return m;
}

cplx CMat::det() const {
  const CMat& m = *this;
  switch (r) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: break;
  }
  // Partial-pivot elimination for r = 4.
  CMat u = m;
  cplx d = 1.0;
  for (int c = 0; c < r; ++c) {
    int p = c;
    for (int i = c + 1; i < r; ++i)
      if (std::abs(u(i, c)) > std::abs(u(p, c))) p = i;
    if (u(p, c) == cplx(0.0)) return 0.0;
    if (p != c) {
      for (int j = 0; j < r; ++j) std::swap(u(p, j), u(c, j));
      d = -d;
    }
    d *= u(c, c);
    for (int i = c + 1; i < r; ++i) {
      const cplx f = u(i, c) / u(c, c);
      for (int j = c; j < r; ++j) u(i, j) -= f * u(c, j);
    }
  }
  return d;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < r; ++i) t += (*this)(i, i);
  return t;
}

double CMat::norm_fro() const {
  double s = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

ConeMatrix::ConeMatrix(Field field, const CMat& m) : field_(field), m_(m) {
  if (m.r < 1 || m.r > 4) throw Error(ErrorKind::Unsupported, "matrix dimension must be 1..4");
  const double scale = std::max(m.norm_fro(), 1e-300);
  for (int i = 0; i < m.r; ++i)
    for (int j = i; j < m.r; ++j) {
      const cplx d = m(i, j) - std::conj(m(j, i));
      if (std::abs(d) > 1e-14 * scale)
        throw Error(ErrorKind::NonSelfAdjoint,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") breaks symmetry");
      if (field == Field::Real && (std::abs(m(i, j).imag()) > 1e-14 * scale))
        throw Error(ErrorKind::NonSelfAdjoint, "real-symmetric matrix has complex entries");
    }
  for (int i = 0; i < m.r; ++i) {
    m_(i, i) = m_(i, i).real();
    for (int j = i + 1; j < m.r; ++j) {
      cplx avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      if (field == Field::Real) avg = avg.real();
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

ConeMatrix ConeMatrix::real(std::initializer_list<std::initializer_list<double>> rows) {
  CMat m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return ConeMatrix(Field::Real, m);
}

ConeMatrix ConeMatrix::real_diag(const std::vector<double>& d) {
  return ConeMatrix(Field::Real, CMat::diag(d));
}

ConeMatrix ConeMatrix::identity(int r, Field field) {
  return ConeMatrix(field, CMat::identity(r));
}

ConeMatrix ConeMatrix::hermitian(std::initializer_list<std::initializer_list<cplx>> rows) {
  CMat m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (cplx v : row) m(i, j++) = v;
    ++i;
  }
  return ConeMatrix(Field::Complex, m);
}

ConeMatrix ConeMatrix::congruence(const CMat& k) const {
  return ConeMatrix(field_, k * m_ * k.adjoint());
}

namespace {

// Cyclic Jacobi on a real symmetric n x n matrix (row-major, n <= 8).
void jacobi_real(int n, std::vector<double>& a, std::vector<double>& v,
                 std::vector<double>& history) {
  v.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  double fro = 0.0;
  for (double x : a) fro += x * x;
  fro = std::sqrt(fro);
  const double thresh = 1e-14 * fro;
  auto off = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };
  history.push_back(off());
  for (int sweep = 0; sweep < 50 && history.back() > thresh; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    history.push_back(off());
  }
}

}  // namespace

EigenResult eigen_sym_herm(const ConeMatrix& A) {
  const int r = A.r();
  EigenResult out;
  out.vectors = CMat(r);
  if (A.field() == Field::Real) {
    std::vector<double> a(r * r), v;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) a[i * r + j] = A(i, j).real();
    jacobi_real(r, a, v, out.offdiag_history);
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return a[x * r + x] < a[y * r + y]; });
    for (int c = 0; c < r; ++c) {
      out.values.push_back(a[idx[c] * r + idx[c]]);
      for (int i = 0; i < r; ++i) out.vectors(i, c) = v[i * r + idx[c]];
    }
    return out;
  }

  // Real embedding [[X, -Y], [Y, X]] of A = X + iY; spectrum doubles.
  const int n = 2 * r;
  std::vector<double> a(n * n), v;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const cplx z = A(i, j);
      a[i * n + j] = z.real();
      a[(i + r) * n + (j + r)] = z.real();
      a[i * n + (j + r)] = -z.imag();
      a[(i + r) * n + j] = z.imag();
    }
  jacobi_real(n, a, v, out.offdiag_history);

  // Each real eigenvector (u; w) gives a complex eigenvector u + i w. Pick
  // r of them greedily by largest component orthogonal to those accepted.
  std::vector<std::array<cplx, 4>> cand(n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < r; ++i) cand[c][i] = cplx(v[i * n + c], v[(i + r) * n + c]);
  std::vector<std::array<cplx, 4>> basis;
  std::vector<bool> used(n, false);
  while (static_cast<int>(basis.size()) < r) {
    int best = -1;
    double best_norm = -1.0;
    std::array<cplx, 4> best_vec{};
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      std::array<cplx, 4> z = cand[c];
      for (const auto& b : basis) {
        cplx dot = 0.0;
        for (int i = 0; i < r; ++i) dot += std::conj(b[i]) * z[i];
        for (int i = 0; i < r; ++i) z[i] -= dot * b[i];
      }
      double nz = 0.0;
      for (int i = 0; i < r; ++i) nz += std::norm(z[i]);
      if (nz > best_norm) {
        best_norm = nz;
        best = c;
        best_vec = z;
      }
    }
    used[best] = true;
    const double s = 1.0 / std::sqrt(best_norm);
    for (int i = 0; i < r; ++i) best_vec[i] *= s;
    basis.push_back(best_vec);
  }
  std::vector<std::pair<double, int>> rq;
  for (int c = 0; c < r; ++c) {
    cplx q = 0.0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) q += std::conj(basis[c][i]) * A(i, j) * basis[c][j];
    rq.emplace_back(q.real(), c);
  }
  std::sort(rq.begin(), rq.end());
  for (int c = 0; c < r; ++c) {
    out.values.push_back(rq[c].first);
    for (int i = 0; i < r; ++i) out.vectors(i, c) = basis[rq[c].second][i];
  }
  return out;
}

CMat cholesky_pd(const ConeMatrix& A) {
  const int r = A.r();
  CMat L(r);
  for (int j = 0; j < r; ++j) {
    double d = A(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(L(j, k));
    if (!(d > 0.0))
      throw Error(ErrorKind::NotPositiveDefinite, "Cholesky pivot " + std::to_string(j) + " is not positive");
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    for (int i = j + 1; i < r; ++i) {
      cplx s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
      L(i, j) = s / ljj;
    }
  }
  return L;
}

double require_pd(const ConeMatrix& A, const char* what) {
  const EigenResult e = eigen_sym_herm(A);
  if (!(e.values.front() > 0.0))
    throw Error(ErrorKind::NotPositiveDefinite, std::string(what) + " is not positive definite");
  return e.values.front();
}

namespace {

ConeMatrix spectral_apply(const ConeMatrix& A, double (*f)(double)) {
  const EigenResult e = eigen_sym_herm(A);
  if (!(e.values.front() > 0.0))
    throw Error(ErrorKind::NotPositiveDefinite, "matrix is not positive definite");
  std::vector<double> d;
  for (double x : e.values) d.push_back(f(x));
  return ConeMatrix(A.field(), e.vectors * CMat::diag(d) * e.vectors.adjoint());
}

}  // namespace

ConeMatrix pd_sqrt(const ConeMatrix& A) {
  return spectral_apply(A, [](double x) { return std::sqrt(x); });
}

ConeMatrix pd_inverse_sqrt(const ConeMatrix& A) {
  return spectral_apply(A, [](double x) { return 1.0 / std::sqrt(x); });
}

MuSpectrum mu_spectrum(const ConeMatrix& y, const ConeMatrix& T, double tol) {
  const ConeMatrix ys = pd_sqrt(y);
  const ConeMatrix m(T.field(), ys.mat() * T.mat() * ys.mat());
  MuSpectrum out;
  out.mu = eigen_sym_herm(m).values;
  double amax = 0.0;
  for (double x : out.mu) amax = std::max(amax, std::abs(x));
  out.mu_min = 0.0;
  bool first = true;
  for (double x : out.mu) {
    if (std::abs(x) <= tol * amax) continue;
    ++out.rank;
    out.det_prime *= x;
    if (x > 0) {
      ++out.n_pos;
      out.delta_plus *= x;
    } else {
      ++out.n_neg;
      out.delta_minus *= -x;
      out.tau_minus += -x;
    }
    if (first || std::abs(x) < out.mu_min) out.mu_min = std::abs(x);
    first = false;
  }
  return out;
}

double det_prime(const ConeMatrix& A, double tol) {
  const EigenResult e = eigen_sym_herm(A);
  double amax = 0.0;
  for (double x : e.values) amax = std::max(amax, std::abs(x));
  double p = 1.0;
  for (double x : e.values)
    if (std::abs(x) > tol * amax) p *= x;
  return p;
}

}  // namespace eisarch
