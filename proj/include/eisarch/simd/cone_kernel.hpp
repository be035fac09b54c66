#pragma once

#include <complex>
#include <cstddef>

namespace eisarch::simd {

using cplx = std::complex<double>;

// One batch of tensor-grid samples. For each point k the contribution is
//   exp(re[k] + Re(a) log D[k]) * cis(phase[k] + Im(a) log D[k]).
// D (det_shift) and phase may be null.
struct ConeBatch {
  std::size_t n = 0;
  const double* det_shift = nullptr;
  const double* re = nullptr;
  const double* phase = nullptr;
  const double* coarse = nullptr;  // 1.0 on the coarse subgrid, else 0.0
  cplx a = 0.0;
};

struct ConeSums {
  cplx fine = 0.0;
  cplx coarse = 0.0;
  double abs_fine = 0.0;  // sum of moduli, for the rounding floor
};

using ConeKernelFn = ConeSums (*)(const ConeBatch&);

ConeSums cone_kernel_scalar(const ConeBatch& b);
ConeSums cone_kernel_avx2(const ConeBatch& b);

bool avx2_available();
// Kernel chosen at first use: AVX2 when the CPU supports it, unless
// EISARCH_SIMD=scalar is set.
ConeKernelFn active_cone_kernel();
const char* active_cone_kernel_name();

// Vector math exposed for equivalence tests; n arbitrary.
void exp_avx2(const double* x, double* out, std::size_t n);
void log_avx2(const double* x, double* out, std::size_t n);
void sincos_avx2(const double* x, double* s, double* c, std::size_t n);

}  // namespace eisarch::simd
