// Built with -mavx2 -mfma; only called after a runtime CPU check.
#include <cmath>

#include "eisarch/simd/cone_kernel.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace eisarch::simd {

namespace {

// Cephes-style polynomial kernels, 4 doubles per call.

inline __m256d poly(__m256d x, const double* c, int n) {
  __m256d y = _mm256_set1_pd(c[0]);
  for (int i = 1; i < n; ++i) y = _mm256_fmadd_pd(y, x, _mm256_set1_pd(c[i]));
  return y;
}

inline __m256d exp4(__m256d x) {
  static const double P[] = {1.26177193074810590878e-4, 3.02994407707441961300e-2,
                             9.99999999999999999910e-1};
  static const double Q[] = {3.00198505138664455042e-6, 2.52448340349684104192e-3,
                             2.27265548208155028766e-1, 2.00000000000000000009e0};
  const __m256d lo = _mm256_set1_pd(-708.3);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), _mm256_set1_pd(709.0));
  const __m256d px = _mm256_floor_pd(_mm256_fmadd_pd(x, _mm256_set1_pd(1.4426950408889634074), _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(px, _mm256_set1_pd(6.93145751953125e-1), x);
  x = _mm256_fnmadd_pd(px, _mm256_set1_pd(1.42860682030941723212e-6), x);
  const __m256d xx = _mm256_mul_pd(x, x);
  const __m256d p = _mm256_mul_pd(x, poly(xx, P, 3));
  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(poly(xx, Q, 4), p));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));
  const __m128i n32 = _mm256_cvtpd_epi32(px);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  r = _mm256_mul_pd(r, _mm256_castsi256_pd(n64));
  return _mm256_andnot_pd(underflow, r);
}

// x > 0, finite, normal.
inline __m256d log4(__m256d x) {
  static const double P[] = {1.01875663804580931796e-4, 4.97494994976747001425e-1,
                             4.70579119878881725854e0,  1.44989225341610930846e1,
                             1.79368678507819816313e1,  7.70838733755885391666e0};
  static const double Q[] = {1.0,
                             1.12873587189167450590e1, 4.52279145837532221105e1,
                             8.29875266912776603211e1, 7.11544750618563894466e1,
                             2.31251620126765340583e1};
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i expo = _mm256_srli_epi64(bits, 52);
  const __m256d magic = _mm256_castsi256_pd(_mm256_set1_epi64x(0x4330000000000000LL));
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(expo, _mm256_castpd_si256(magic))), magic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));
  const __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                       _mm256_set1_epi64x(0x3FE0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant);  // [0.5, 1)
  const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, _mm256_set1_pd(1.0)));
  m = _mm256_add_pd(m, _mm256_and_pd(small, m));
  const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
  const __m256d z = _mm256_mul_pd(f, f);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(f, z), _mm256_div_pd(poly(f, P, 6), poly(f, Q, 6)));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), _mm256_add_pd(f, y));
}

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  static const double S[] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                             2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                             8.33333333332211858878e-3,  -1.66666666666666307295e-1};
  static const double C[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                             -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                             -1.38888888888730564116e-3,  4.16666666666665929218e-2};
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d xsign = _mm256_and_pd(x, sign_mask);
  const __m256d ax = _mm256_andnot_pd(sign_mask, x);
  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(1.27323954473516268615)));
  const __m256d odd = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.5)))));
  y = _mm256_add_pd(y, odd);
  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156e-1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668e-8), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645e-15), z);
  const __m256d zz = _mm256_mul_pd(z, z);
  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), poly(zz, S, 6), z);
  __m256d pc = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0));
  pc = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), poly(zz, C, 6), pc);
  // q = (y/2) mod 4
  const __m256d half = _mm256_mul_pd(y, _mm256_set1_pd(0.5));
  const __m256d q = _mm256_sub_pd(half, _mm256_mul_pd(_mm256_set1_pd(4.0), _mm256_floor_pd(_mm256_mul_pd(half, _mm256_set1_pd(0.25)))));
  const __m256d q_odd = _mm256_cmp_pd(_mm256_sub_pd(q, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(_mm256_mul_pd(q, _mm256_set1_pd(0.5))))),
                                      _mm256_set1_pd(0.5), _CMP_GT_OQ);
  const __m256d sin_neg = _mm256_cmp_pd(q, _mm256_set1_pd(1.5), _CMP_GT_OQ);
  const __m256d cos_neg = _mm256_and_pd(_mm256_cmp_pd(q, _mm256_set1_pd(0.5), _CMP_GT_OQ),
                                        _mm256_cmp_pd(q, _mm256_set1_pd(2.5), _CMP_LT_OQ));
  __m256d s = _mm256_blendv_pd(ps, pc, q_odd);
  __m256d c = _mm256_blendv_pd(pc, ps, q_odd);
  s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign_mask));
  s = _mm256_xor_pd(s, xsign);
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_mask));
  s_out = s;
  c_out = c;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

ConeSums cone_kernel_avx2(const ConeBatch& b) {
  const double ar = b.a.real(), ai = b.a.imag();
  const bool oscillates = b.phase != nullptr || (b.det_shift != nullptr && ai != 0.0);
  const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai);
  __m256d fr = _mm256_setzero_pd(), fi = fr, cr = fr, ci = fr, ab = fr;
  std::size_t k = 0;
  for (; k + 4 <= b.n; k += 4) {
    __m256d e = _mm256_loadu_pd(b.re + k);
    __m256d ph = b.phase ? _mm256_loadu_pd(b.phase + k) : _mm256_setzero_pd();
    if (b.det_shift) {
      const __m256d ld = log4(_mm256_loadu_pd(b.det_shift + k));
      e = _mm256_fmadd_pd(var, ld, e);
      ph = _mm256_fmadd_pd(vai, ld, ph);
    }
    const __m256d mag = exp4(e);
    const __m256d mask = _mm256_loadu_pd(b.coarse + k);
    ab = _mm256_add_pd(ab, mag);
    if (oscillates) {
      __m256d s, c;
      sincos4(ph, s, c);
      const __m256d vr = _mm256_mul_pd(mag, c), vi = _mm256_mul_pd(mag, s);
      fr = _mm256_add_pd(fr, vr);
      fi = _mm256_add_pd(fi, vi);
      cr = _mm256_fmadd_pd(mask, vr, cr);
      ci = _mm256_fmadd_pd(mask, vi, ci);
    } else {
      fr = _mm256_add_pd(fr, mag);
      cr = _mm256_fmadd_pd(mask, mag, cr);
    }
  }
  ConeBatch tail = b;
  tail.n = b.n - k;
  tail.re += k;
  if (tail.phase) tail.phase += k;
  if (tail.det_shift) tail.det_shift += k;
  tail.coarse += k;
  ConeSums s = cone_kernel_scalar(tail);
  s.fine += cplx(hsum(fr), hsum(fi));
  s.coarse += cplx(hsum(cr), hsum(ci));
  s.abs_fine += hsum(ab);
  return s;
}

void exp_avx2(const double* x, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, exp4(_mm256_loadu_pd(x + k)));
  for (; k < n; ++k) out[k] = std::exp(x[k]);
}

void log_avx2(const double* x, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, log4(_mm256_loadu_pd(x + k)));
  for (; k < n; ++k) out[k] = std::log(x[k]);
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + k), vs, vc);
    _mm256_storeu_pd(s + k, vs);
    _mm256_storeu_pd(c + k, vc);
  }
  for (; k < n; ++k) {
    s[k] = std::sin(x[k]);
    c[k] = std::cos(x[k]);
  }
}

}  // namespace eisarch::simd

#else

namespace eisarch::simd {

ConeSums cone_kernel_avx2(const ConeBatch& b) { return cone_kernel_scalar(b); }

void exp_avx2(const double* x, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = std::exp(x[k]);
}
void log_avx2(const double* x, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = std::log(x[k]);
}
void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = std::sin(x[k]);
    c[k] = std::cos(x[k]);
  }
}

}  // namespace eisarch::simd

#endif
