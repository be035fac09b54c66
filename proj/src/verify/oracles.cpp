#include "eisarch/verify_oracles.hpp"

#include <cmath>

#include "eisarch/eiscoef.hpp"

namespace eisarch::oracle {

ConeMatrix random_pd(std::mt19937_64& rng, int r, Field f, double lo, double hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), ev(lo, hi);
  // random unitary from Gram-Schmidt, then Q diag Q^dagger
  CMat q(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) q(i, j) = f == Field::Real ? cplx(u(rng)) : cplx(u(rng), u(rng));
  for (int c = 0; c < r; ++c) {
    for (int p = 0; p < c; ++p) {
      cplx dot = 0.0;
      for (int i = 0; i < r; ++i) dot += std::conj(q(i, p)) * q(i, c);
      for (int i = 0; i < r; ++i) q(i, c) -= dot * q(i, p);
    }
    double n = 0.0;
    for (int i = 0; i < r; ++i) n += std::norm(q(i, c));
    n = std::sqrt(n);
    for (int i = 0; i < r; ++i) q(i, c) /= n;
  }
  std::vector<double> d(r);
  for (auto& x : d) x = ev(rng);
  CMat m = q * CMat::diag(d) * q.adjoint();
  for (int i = 0; i < r; ++i) {
    m(i, i) = m(i, i).real();
    for (int j = i + 1; j < r; ++j) m(j, i) = std::conj(m(i, j));
  }
  return ConeMatrix(f, m);
}

double decay_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DSample d_by_sampling(const CaseParams& ctx, double eps) {
  auto pair = [&](double e) {
    const cplx p = d_function(ctx, e), m = d_function(ctx, -e);
    return std::pair<cplx, cplx>{0.5 * (p + m), (p - m) / (2.0 * e)};
  };
  const auto [a1, b1] = pair(eps);
  const auto [a2, b2] = pair(0.5 * eps);
  const cplx d0 = (4.0 * a2 - a1) / 3.0;
  const cplx d1 = (4.0 * b2 - b1) / 3.0;
  return {d0, d1 / d0};
}

}  // namespace eisarch::oracle
