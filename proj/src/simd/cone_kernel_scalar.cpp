#include <cmath>

#include "eisarch/simd/cone_kernel.hpp"

namespace eisarch::simd {

ConeSums cone_kernel_scalar(const ConeBatch& b) {
  ConeSums s;
  const double ar = b.a.real(), ai = b.a.imag();
  const bool oscillates = b.phase != nullptr || (b.det_shift != nullptr && ai != 0.0);
  double fr = 0, fi = 0, cr = 0, ci = 0, ab = 0;
  for (std::size_t k = 0; k < b.n; ++k) {
    double e = b.re[k];
    double ph = b.phase ? b.phase[k] : 0.0;
    if (b.det_shift) {
      const double ld = std::log(b.det_shift[k]);
      e += ar * ld;
      ph += ai * ld;
    }
    const double mag = std::exp(e);
    ab += mag;
    if (oscillates) {
      const double vr = mag * std::cos(ph), vi = mag * std::sin(ph);
      fr += vr;
      fi += vi;
      cr += b.coarse[k] * vr;
      ci += b.coarse[k] * vi;
    } else {
      fr += mag;
      cr += b.coarse[k] * mag;
    }
  }
  s.fine = {fr, fi};
  s.coarse = {cr, ci};
  s.abs_fine = ab;
  return s;
}

}  // namespace eisarch::simd
