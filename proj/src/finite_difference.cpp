#include "eisarch/finite_difference.hpp"

#include <cmath>

#include "eisarch/error.hpp"

namespace eisarch {

MatrixCoords::MatrixCoords(int r_, Field f) : r(r_), field(f) {
  for (int i = 0; i < r; ++i) {
    CMat e(r);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      CMat e(r);
      e(i, j) = e(j, i) = 1.0;
      basis.push_back(e);
      if (f == Field::Complex) {
        CMat b(r);
        b(i, j) = cplx(0.0, 1.0);
        b(j, i) = cplx(0.0, -1.0);
        basis.push_back(b);
      }
    }
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  DiffPoly out;
  for (const auto& [ma, ca] : terms)
    for (const auto& [mb, cb] : o.terms) {
      Monomial m{};
      for (int k = 0; k < 9; ++k) m[k] = ma[k] + mb[k];
      out.terms[m] += ca * cb;
    }
  return out;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  DiffPoly out = *this;
  for (const auto& [m, c] : o.terms) out.terms[m] += c;
  return out;
}

DiffPoly DiffPoly::operator*(cplx s) const {
  DiffPoly out = *this;
  for (auto& [m, c] : out.terms) c *= s;
  return out;
}

int DiffPoly::max_order() const {
  int best = 0;
  for (const auto& [m, c] : terms) {
    if (c == cplx(0.0)) continue;
    int s = 0;
    for (int e : m) s += e;
    best = std::max(best, s);
  }
  return best;
}

namespace {

DiffPoly monomial(int k, cplx c) {
  DiffPoly p;
  Monomial m{};
  if (k >= 0) m[k] = 1;
  p.terms[m] = c;
  return p;
}

}  // namespace

DiffPoly conjugated_delta(const MatrixCoords& c) {
  const int r = c.r;
  // Operator matrix entries.
  std::vector<std::vector<DiffPoly>> op(r, std::vector<DiffPoly>(r));
  for (int i = 0; i < r; ++i) op[i][i] = monomial(i, 1.0) + monomial(-1, -1.0);
  int k = r;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      if (c.field == Field::Real) {
        op[i][j] = op[j][i] = monomial(k, 0.5);
        ++k;
      } else {
        op[i][j] = monomial(k, 0.5) + monomial(k + 1, cplx(0.0, -0.5));
        op[j][i] = monomial(k, 0.5) + monomial(k + 1, cplx(0.0, 0.5));
        k += 2;
      }
    }
  if (r > 3) throw Error(ErrorKind::Unsupported, "Delta operator implemented for r <= 3");
  // Leibniz expansion.
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  DiffPoly det;
  do {
    int inv = 0;
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b)
        if (perm[a] > perm[b]) ++inv;
    DiffPoly term = monomial(-1, inv % 2 ? -1.0 : 1.0);
    for (int a = 0; a < r; ++a) term = term * op[a][perm[a]];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

DiffPoly power(const DiffPoly& p, int n) {
  DiffPoly out = monomial(-1, 1.0);
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

std::vector<std::pair<int, double>> central_stencil(int e) {
  // Even e: delta^e. Odd e: average of delta^e at +-1/2.
  std::vector<double> binom(e + 1);
  for (int j = 0; j <= e; ++j) binom[j] = std::round(std::tgamma(e + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(e - j + 1.0)));
  std::map<int, double> w;
  if (e % 2 == 0) {
    for (int j = 0; j <= e; ++j) w[e / 2 - j] += (j % 2 ? -1.0 : 1.0) * binom[j];
  } else {
    for (int shift : {1, -1})
      for (int j = 0; j <= e; ++j) {
        // position (e/2 - j + shift/2) is an integer for odd e
        const int pos = (e - 2 * j + shift) / 2;
        w[pos] += 0.5 * (j % 2 ? -1.0 : 1.0) * binom[j];
      }
  }
  std::vector<std::pair<int, double>> out;
  for (const auto& [o, v] : w)
    if (v != 0.0) out.emplace_back(o, v);
  return out;
}

cplx apply_diff_poly(const DiffPoly& p, const MatrixCoords& c,
                     const std::function<cplx(const CMat&)>& F, const CMat& g, double h) {
  const int n = c.size();
  std::map<std::vector<int>, cplx> weights;
  for (const auto& [m, coef] : p.terms) {
    if (coef == cplx(0.0)) continue;
    int order = 0;
    std::vector<std::vector<std::pair<int, double>>> st(n);
    for (int k = 0; k < n; ++k) {
      st[k] = central_stencil(m[k]);
      order += m[k];
    }
    const cplx scale = coef / std::pow(h, order);
    std::vector<int> idx(n, 0), off(n, 0);
    while (true) {
      double w = 1.0;
      for (int k = 0; k < n; ++k) {
        off[k] = st[k][idx[k]].first;
        w *= st[k][idx[k]].second;
      }
      weights[off] += scale * w;
      int k = 0;
      while (k < n && ++idx[k] == static_cast<int>(st[k].size())) idx[k++] = 0;
      if (k == n) break;
    }
  }
  // Samples are centered on F(g): derivative stencils have zero weight sum,
  // so only the constant monomial sees F(g) itself.
  Monomial zero{};
  const auto it0 = p.terms.find(zero);
  const cplx c0 = it0 == p.terms.end() ? cplx(0.0) : it0->second;
  const cplx F0 = F(g);
  cplx sum = 0.0;
  for (const auto& [off, w] : weights) {
    if (w == cplx(0.0)) continue;
    bool center = true;
    CMat x = g;
    for (int k = 0; k < n; ++k)
      if (off[k] != 0) {
        x = x + c.basis[k] * cplx(h * off[k]);
        center = false;
      }
    if (!center) sum += w * (F(x) - F0);
  }
  return c0 * F0 + sum;
}

}  // namespace eisarch
