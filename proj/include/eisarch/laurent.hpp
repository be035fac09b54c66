#pragma once

#include <complex>
#include <vector>

namespace eisarch {

using cplx = std::complex<double>;

// Truncated Laurent series sum_{n=min_order}^{min_order+K} c_n (z - center)^n.
class LaurentValue {
 public:
  LaurentValue() = default;
  LaurentValue(cplx center, int min_order, std::vector<cplx> coeffs);

  static LaurentValue constant(cplx center, cplx c, int K);
  // exp(a (z - center)) to K terms.
  static LaurentValue exp_linear(cplx center, cplx a, int K);

  cplx center() const { return center_; }
  int min_order() const { return min_order_; }
  int max_order() const { return min_order_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int order) const;

  // Re-expand in w where z - center = lambda (w - new_center).
  LaurentValue substitute(cplx new_center, cplx lambda) const;
  // Drop leading coefficients below tol * max|c|.
  LaurentValue simplified(double tol = 1e-13) const;

  LaurentValue operator+(const LaurentValue& o) const;
  LaurentValue operator-(const LaurentValue& o) const;
  LaurentValue operator*(const LaurentValue& o) const;
  LaurentValue operator/(const LaurentValue& o) const;
  LaurentValue operator*(cplx s) const;

  // Value at the center; requires min_order >= 0.
  cplx value_at_center() const;

 private:
  cplx center_ = 0.0;
  int min_order_ = 0;
  std::vector<cplx> c_;
};

LaurentValue laurent_gamma(cplx z0, int K = 4);

}  // namespace eisarch
