#include "eisarch/rational.hpp"

#include <algorithm>
#include <cctype>

#include "eisarch/error.hpp"

namespace eisarch {

GaussRat GaussRat::operator/(const GaussRat& o) const {
  const Rat d = o.re * o.re + o.im * o.im;
  if (d == 0) throw Error(ErrorKind::DomainError, "division by zero");
  const GaussRat num = *this * o.conj();
  return {num.re / d, num.im / d};
}

std::string GaussRat::str() const {
  if (im == 0) return re.str();
  return re.str() + (im < 0 ? "-" : "+") + Rat(abs(im)).str() + "i";
}

Rat parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bad = [&] { return Error(ErrorKind::NonRationalInput, "not a rational literal: '" + raw + "'"); };
  if (s.empty()) throw bad();
  auto digits = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  using boost::multiprecision::cpp_int;
  // cpp_int reads a leading 0 as octal
  auto integer = [](std::string t) {
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    const auto nz = t.find_first_not_of('0');
    t = nz == std::string::npos ? "0" : t.substr(nz);
    const cpp_int v(t);
    return neg ? cpp_int(-v) : v;
  };
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!digits(p, true) || !digits(q, false)) throw bad();
    const cpp_int den = integer(q);
    if (den == 0) throw bad();
    return Rat(integer(p), den);
  }
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (!digits(ip, false) || (!fp.empty() && !digits(fp, false))) throw bad();
    cpp_int den = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
    Rat v(integer(ip + fp), den);
    return neg ? Rat(-v) : v;
  }
  if (!digits(s, true)) throw bad();
  return Rat(integer(s));
}

RatMatrix RatMatrix::identity(int n, bool herm) {
  RatMatrix m(n, herm);
  for (int i = 0; i < n; ++i) m(i, i) = GaussRat(1);
  return m;
}

RatMatrix RatMatrix::adjoint() const {
  RatMatrix m(n, hermitian);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (*this)(j, i).conj();
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  RatMatrix m(n, hermitian || o.hermitian);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaussRat s;
      for (int k = 0; k < n; ++k) s = s + (*this)(i, k) * o(k, j);
      m(i, j) = s;
    }
  return m;
}

namespace {

// Reduced row echelon form in place, pivoting among the first cols columns.
std::vector<int> echelon(std::vector<std::vector<GaussRat>>& m, int cols) {
  const int width = m.empty() ? 0 : int(m[0].size());
  std::vector<int> piv;
  int row = 0;
  const int rows = int(m.size());
  for (int c = 0; c < cols && row < rows; ++c) {
    int p = -1;
    for (int i = row; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    const GaussRat inv = GaussRat(1) / m[row][c];
    for (int j = 0; j < width; ++j) m[row][j] = m[row][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || m[i][c].is_zero()) continue;
      const GaussRat f = m[i][c];
      for (int j = 0; j < width; ++j) m[i][j] = m[i][j] - f * m[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

std::vector<std::vector<GaussRat>> rows_of(const RatMatrix& T) {
  std::vector<std::vector<GaussRat>> m(T.n, std::vector<GaussRat>(T.n));
  for (int i = 0; i < T.n; ++i)
    for (int j = 0; j < T.n; ++j) m[i][j] = T(i, j);
  return m;
}

GaussRat det_rows(std::vector<std::vector<GaussRat>> m) {
  const int n = int(m.size());
  GaussRat d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return GaussRat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d = d * m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const GaussRat f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  return d;
}

}  // namespace

GaussRat RatMatrix::det() const { return det_rows(rows_of(*this)); }

int RatMatrix::rank() const {
  auto m = rows_of(*this);
  return int(echelon(m, n).size());
}

std::vector<std::vector<std::string>> RatMatrix::str() const {
  std::vector<std::vector<std::string>> out(n, std::vector<std::string>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = (*this)(i, j).str();
  return out;
}

void require_self_adjoint(const RatMatrix& T) {
  if (!(T.adjoint() == T)) throw Error(ErrorKind::NonSelfAdjoint, "T is not self-adjoint");
}

GaussRat det_prime(const RatMatrix& T) {
  const int t = T.rank();
  if (t == 0) return GaussRat(1);
  GaussRat sum;
  // principal minors of size t by bitmask
  for (unsigned mask = 0; mask < (1u << T.n); ++mask) {
    if (__builtin_popcount(mask) != t) continue;
    std::vector<int> idx;
    for (int i = 0; i < T.n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<GaussRat>> m(t, std::vector<GaussRat>(t));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) m[i][j] = T(idx[i], idx[j]);
    sum = sum + det_rows(m);
  }
  return sum;
}

Reduction reduce_degenerate(const RatMatrix& T) {
  require_self_adjoint(T);
  const int n = T.n;
  auto e = rows_of(T);
  const std::vector<int> piv = echelon(e, n);
  const int t = int(piv.size());
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;

  // kernel basis: one vector per free column, first nonzero entry positive
  std::vector<std::vector<GaussRat>> cols;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<GaussRat> k(n);
    k[f] = GaussRat(1);
    for (int r = 0; r < t; ++r) k[piv[r]] = -e[r][f];
    for (int i = 0; i < n; ++i)
      if (!k[i].is_zero()) {
        if (k[i].im == 0 && k[i].re < 0)
          for (auto& x : k) x = -x;
        break;
      }
    cols.push_back(k);
  }
  // complete with standard vectors, scanning from the last index down
  for (int j = n - 1; j >= 0 && int(cols.size()) < n; --j) {
    std::vector<std::vector<GaussRat>> trial = cols;
    std::vector<GaussRat> ej(n);
    ej[j] = GaussRat(1);
    trial.push_back(ej);
    // rank test on the rows = candidate vectors
    auto tm = trial;
    if (int(echelon(tm, n).size()) == int(trial.size())) cols.push_back(ej);
  }
  // the completion vectors were added in descending index order; restore ascending
  std::reverse(cols.begin() + (n - t), cols.end());

  RatMatrix M(n, T.hermitian);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i) M(i, c) = cols[c][i];
  const GaussRat dM = M.det();
  if (!(dM == GaussRat(1)))
    for (int i = 0; i < n; ++i) M(i, n - 1) = M(i, n - 1) / dM;

  Reduction out;
  out.rank = t;
  out.gamma_inv = M;
  // gamma = M^{-1} via Gauss-Jordan on [M | I]
  std::vector<std::vector<GaussRat>> aug(n, std::vector<GaussRat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = M(i, j);
    aug[i][n + i] = GaussRat(1);
  }
  echelon(aug, n);
  out.gamma = RatMatrix(n, T.hermitian);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.gamma(i, j) = aug[i][n + j];

  const RatMatrix D = M.adjoint() * T * M;
  out.S = RatMatrix(t, T.hermitian);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) out.S(i, j) = D(n - t + i, n - t + j);
  out.det_S = t > 0 ? out.S.det() : GaussRat(1);
  out.det_prime_T = det_prime(T);
  out.discrepancy = !(out.det_S == out.det_prime_T);
  return out;
}

}  // namespace eisarch
