#include "eisarch/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "eisarch/error.hpp"
#include "eisarch/specfun.hpp"

namespace eisarch {

LaurentValue::LaurentValue(cplx center, int min_order, std::vector<cplx> coeffs)
    : center_(center), min_order_(min_order), c_(std::move(coeffs)) {
  if (c_.empty()) throw Error(ErrorKind::DomainError, "empty Laurent series");
}

LaurentValue LaurentValue::constant(cplx center, cplx c, int K) {
  std::vector<cplx> v(K + 1, 0.0);
  v[0] = c;
  return LaurentValue(center, 0, v);
}

LaurentValue LaurentValue::exp_linear(cplx center, cplx a, int K) {
  std::vector<cplx> v(K + 1);
  cplx t = 1.0;
  for (int n = 0; n <= K; ++n) {
    v[n] = t;
    t *= a / static_cast<double>(n + 1);
  }
  return LaurentValue(center, 0, v);
}

cplx LaurentValue::coeff(int order) const {
  const int i = order - min_order_;
  if (i < 0) return 0.0;
  if (i >= static_cast<int>(c_.size())) throw Error(ErrorKind::DomainError, "order beyond truncation");
  return c_[i];
}

LaurentValue LaurentValue::substitute(cplx new_center, cplx lambda) const {
  std::vector<cplx> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * std::pow(lambda, min_order_ + static_cast<int>(i));
  return LaurentValue(new_center, min_order_, v);
}

LaurentValue LaurentValue::simplified(double tol) const {
  double mx = 0.0;
  for (const cplx& c : c_) mx = std::max(mx, std::abs(c));
  size_t skip = 0;
  while (skip + 1 < c_.size() && std::abs(c_[skip]) <= tol * mx) ++skip;
  return LaurentValue(center_, min_order_ + static_cast<int>(skip),
                      std::vector<cplx>(c_.begin() + skip, c_.end()));
}

LaurentValue LaurentValue::operator+(const LaurentValue& o) const {
  const int lo = std::min(min_order_, o.min_order_);
  const int hi = std::min(max_order(), o.max_order());
  if (hi < lo) throw Error(ErrorKind::DomainError, "Laurent sum has no valid terms");
  std::vector<cplx> v;
  for (int n = lo; n <= hi; ++n) {
    cplx s = 0.0;
    if (n >= min_order_) s += c_[n - min_order_];
    if (n >= o.min_order_) s += o.c_[n - o.min_order_];
    v.push_back(s);
  }
  return LaurentValue(center_, lo, v);
}

LaurentValue LaurentValue::operator-(const LaurentValue& o) const { return *this + o * cplx(-1.0); }

LaurentValue LaurentValue::operator*(cplx s) const {
  std::vector<cplx> v(c_);
  for (cplx& c : v) c *= s;
  return LaurentValue(center_, min_order_, v);
}

LaurentValue LaurentValue::operator*(const LaurentValue& o) const {
  const size_t L = std::min(c_.size(), o.c_.size());
  std::vector<cplx> v(L, 0.0);
  for (size_t n = 0; n < L; ++n)
    for (size_t i = 0; i <= n; ++i) v[n] += c_[i] * o.c_[n - i];
  return LaurentValue(center_, min_order_ + o.min_order_, v);
}

LaurentValue LaurentValue::operator/(const LaurentValue& o) const {
  if (std::abs(o.c_[0]) < 1e-300) throw Error(ErrorKind::DomainError, "Laurent division by vanishing leading coefficient");
  const size_t L = std::min(c_.size(), o.c_.size());
  std::vector<cplx> q(L, 0.0);
  for (size_t n = 0; n < L; ++n) {
    cplx s = c_[n];
    for (size_t k = 1; k <= n; ++k) s -= o.c_[k] * q[n - k];
    q[n] = s / o.c_[0];
  }
  return LaurentValue(center_, min_order_ - o.min_order_, q);
}

cplx LaurentValue::value_at_center() const {
  if (min_order_ < 0) throw Error(ErrorKind::PoleHit, "Laurent series has a pole at its center");
  return min_order_ == 0 ? c_[0] : cplx(0.0);
}

LaurentValue laurent_gamma(cplx z0, int K) {
  if (K < 2) throw Error(ErrorKind::DomainError, "laurent_gamma needs K >= 2");
  const bool at_pole = z0.imag() == 0.0 && z0.real() <= 0.0 && std::abs(z0.real() - std::round(z0.real())) < 1e-14;
  double radius = 0.5;
  if (at_pole) {
    z0 = std::round(z0.real());
  } else {
    // Stay clear of the nearest pole.
    const double dist = std::abs(z0 - std::min(0.0, std::round(z0.real())));
    radius = std::min(0.5, 0.5 * dist);
  }
  // Discrete Cauchy integral for the Taylor coefficients of f(e).
  const int N = 64;
  std::vector<cplx> f(N);
  for (int k = 0; k < N; ++k) {
    const cplx e = std::polar(radius, 2.0 * kPi * k / N);
    f[k] = at_pole ? e * gamma(z0 + e) : gamma(z0 + e);
  }
  std::vector<cplx> c(K + 1);
  for (int n = 0; n <= K; ++n) {
    cplx s = 0.0;
    for (int k = 0; k < N; ++k) s += f[k] * std::polar(1.0, -2.0 * kPi * k * n / N);
    c[n] = s / (N * std::pow(radius, n));
  }
  if (at_pole) {
    const int j = static_cast<int>(-z0.real());
    c[0] = (j % 2 == 0 ? 1.0 : -1.0) / std::tgamma(j + 1.0);
    return LaurentValue(z0, -1, c);
  }
  return LaurentValue(z0, 0, c);
}

}  // namespace eisarch
