#pragma once

#include <array>
#include <complex>
#include <vector>

#include "eisarch/matcone.hpp"

namespace eisarch {

using Vec = std::array<cplx, 4>;

// (V, Q) of signature (1,2) over R or (1,1) over C. Q(x,y) = x^T G conj(y) in the
// complex case; the real form is extended bilinearly to complex vectors.
class HermitianSpace {
 public:
  // Throws DomainError unless the signature is (1,2) real or (1,1) complex.
  HermitianSpace(Field field, const CMat& gram);
  static HermitianSpace o12();
  static HermitianSpace u11();

  Field field() const { return field_; }
  int dim() const { return gram_.r; }
  int p() const { return 1; }
  int q() const { return field_ == Field::Real ? 2 : 1; }
  const CMat& gram() const { return gram_; }
  cplx Q(const Vec& x, const Vec& y) const;

  // Chart frame in ambient coordinates: w in the upper half-plane (real) or
  // the unit disc (complex).
  Vec frame(cplx w) const;
  // Inverse of frame() up to scaling.
  cplx chart_coordinate(const Vec& F) const;
  bool in_chart(cplx w) const;

 private:
  Field field_;
  CMat gram_;
  CMat to_std_;    // standard coords -> ambient
  CMat from_std_;  // ambient -> standard coords
};

struct DomainPoint {
  cplx w = 0.0;
  Vec frame{};
};

struct SpaceVector {
  Vec coords{};
  double qvv = 0.0;
};

// Validates the frame invariants (DegenerateFrame).
DomainPoint chart_point(const HermitianSpace& V, cplx w);
DomainPoint point_from_frame(const HermitianSpace& V, const Vec& F);
SpaceVector space_vector(const HermitianSpace& V, const Vec& coords);

// Hermitian metric on the tautological line; the real case carries the 1/2
// that makes Q_z = Q + 2h exact.
double frame_norm(const HermitianSpace& V, const Vec& F);

struct Majorant {
  double Qz = 0.0;
  double h = 0.0;
};
Majorant majorant_and_norm(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V);

// x^rho Gamma(-rho, x); rho = 0 gives E_1(x).
double green_from_x(double x, double rho = 0.0);
double green_rank1(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V, double rho = 0.0);

// Coefficients against (i/2) dw ^ d(conj w).
struct KMForm {
  double phi2 = 0.0;
  double omega_E = 0.0;
};
KMForm km_form_chart(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V, double h_grid);

// Points of D_v inside the chart.
std::vector<cplx> divisor_in_chart(const SpaceVector& v, const HermitianSpace& V);

struct ChartGrid {
  int n = 21;
  // Default region: Re w in [-1,1], Im w in [0.5,2] (upper half-plane) or
  // [-0.6,0.6]^2 (disc).
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
  // 0 picks max(5 h_grid, 0.3).
  double exclusion = 0.0;
};

struct GreenRow {
  cplx w;
  double value = 0.0;
  double residual = 0.0;
};

struct GreenReport {
  double residual = 0.0;       // max at h_grid
  double residual_half = 0.0;  // max at h_grid / 2
  double order = 0.0;          // log2 of the ratio
  int points = 0;
  int excluded = 0;
  double exclusion = 0.0;
  std::vector<GreenRow> rows;  // per point at h_grid
};

// max |dd^c g(v) - phi(v)_[2]| over the grid (5-point Laplacian).
GreenReport greens_identity_check(const SpaceVector& v, const HermitianSpace& V, const ChartGrid& grid,
                                  double h_grid);

// |dd^c exp(-2 pi t h) + t d/dt phi(sqrt(t) v)_[2]|
double transgression_check(const DomainPoint& z, const SpaceVector& v, const HermitianSpace& V, double t,
                           double h_grid = 1e-3, double h_t = 1e-3);

}  // namespace eisarch
