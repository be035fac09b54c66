#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "eisarch/matcone.hpp"

namespace eisarch {

// Real coordinates of the symmetric/Hermitian r x r matrices: diagonal
// entries, then for i < j the entry (orthogonal) or its real and
// imaginary parts (unitary).
struct MatrixCoords {
  int r = 1;
  Field field = Field::Real;
  std::vector<CMat> basis;

  MatrixCoords(int r, Field field);
  int size() const { return static_cast<int>(basis.size()); }
};

using Monomial = std::array<int, 9>;

// Constant-coefficient polynomial in the coordinate partial derivatives.
struct DiffPoly {
  std::map<Monomial, cplx> terms;

  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator*(cplx c) const;
  int max_order() const;
};

// e^{tr g} Delta e^{-tr g}, with Delta the determinant of the matrix of
// entry derivatives (symmetrized for the orthogonal case, Wirtinger for
// the unitary case).
DiffPoly conjugated_delta(const MatrixCoords& c);
DiffPoly power(const DiffPoly& p, int n);

// Second-order central stencil for d^e/dx^e: offset -> weight, step 1.
std::vector<std::pair<int, double>> central_stencil(int e);

// Applies p to F at g with step h.
cplx apply_diff_poly(const DiffPoly& p, const MatrixCoords& c,
                     const std::function<cplx(const CMat&)>& F, const CMat& g, double h);

}  // namespace eisarch
