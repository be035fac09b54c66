#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eisarch {

using Rat = boost::multiprecision::cpp_rational;

// a + b i with rational parts.
struct GaussRat {
  Rat re = 0, im = 0;

  GaussRat() = default;
  GaussRat(Rat r, Rat i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussRat conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  GaussRat operator/(const GaussRat& o) const;
  std::string str() const;
};

// Parses "p", "p/q", or a decimal literal with finite expansion ("0.25").
// Throws NonRationalInput.
Rat parse_rational(const std::string& s);

struct RatMatrix {
  int n = 0;
  bool hermitian = false;  // entries in Q(i) when true
  std::vector<GaussRat> a;

  RatMatrix() = default;
  RatMatrix(int n_, bool herm) : n(n_), hermitian(herm), a(std::size_t(n_) * n_) {}
  static RatMatrix identity(int n, bool herm = false);
  GaussRat& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  const GaussRat& operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
  RatMatrix adjoint() const;
  RatMatrix operator*(const RatMatrix& o) const;
  bool operator==(const RatMatrix& o) const { return n == o.n && a == o.a; }
  GaussRat det() const;
  int rank() const;
  std::vector<std::vector<std::string>> str() const;
};

// Throws NonSelfAdjoint when T differs from its adjoint.
void require_self_adjoint(const RatMatrix& T);

// Sum of principal t x t minors, t = rank: the product of nonzero eigenvalues.
GaussRat det_prime(const RatMatrix& T);

struct Reduction {
  RatMatrix gamma;      // det 1
  RatMatrix gamma_inv;
  RatMatrix S;          // t x t, nonsingular
  int rank = 0;
  GaussRat det_S;
  GaussRat det_prime_T;
  bool discrepancy = false;  // det S != det' T
};

// gamma^{-dagger} T gamma^{-1} = diag(0_{r-t}, S) exactly.
Reduction reduce_degenerate(const RatMatrix& T);

}  // namespace eisarch
