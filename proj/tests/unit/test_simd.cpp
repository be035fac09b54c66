#include <doctest.h>

#include <random>
#include <vector>

#include "eisarch/simd/cone_kernel.hpp"
#include "test_util.hpp"

using namespace eisarch::simd;

TEST_SUITE("simd") {
  TEST_CASE("vector exp, log, sincos match libm") {
    if (!avx2_available()) return;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-700.0, 700.0), ul(1e-300, 1e300), us(-200.0, 200.0);
    const std::size_t n = 1037;  // not a multiple of the lane width
    std::vector<double> x(n), y(n), s(n), c(n);
    for (auto& v : x) v = ux(rng);
    exp_avx2(x.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - std::exp(x[i])) <= 4e-16 * std::exp(x[i]));
    for (auto& v : x) v = std::exp(std::log(1e-300) * (1 - 2 * std::uniform_real_distribution<double>()(rng)));
    log_avx2(x.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - std::log(x[i])) <= 4e-16 * std::max(1.0, std::abs(std::log(x[i]))));
    for (auto& v : x) v = us(rng);
    sincos_avx2(x.data(), s.data(), c.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(s[i] - std::sin(x[i])) <= 1e-15);
      CHECK(std::abs(c[i] - std::cos(x[i])) <= 1e-15);
    }
  }

  TEST_CASE("cone kernel: scalar and AVX2 agree") {
    if (!avx2_available()) return;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t n : {std::size_t(1), std::size_t(3), std::size_t(4), std::size_t(257)})
      for (int variant = 0; variant < 3; ++variant) {
        std::vector<double> D(n), re(n), ph(n), coarse(n);
        for (std::size_t k = 0; k < n; ++k) {
          D[k] = 0.1 + 5 * u(rng);
          re[k] = -30 * u(rng);
          ph[k] = 20 * (u(rng) - 0.5);
          coarse[k] = k % 2 ? 0.0 : 1.0;
        }
        ConeBatch b;
        b.n = n;
        b.re = re.data();
        b.coarse = coarse.data();
        b.a = cplx(1.7, -0.4);
        if (variant >= 1) b.det_shift = D.data();
        if (variant >= 2) b.phase = ph.data();
        const ConeSums s = cone_kernel_scalar(b), v = cone_kernel_avx2(b);
        CHECK(std::abs(s.fine - v.fine) <= 1e-13 * s.abs_fine);
        CHECK(std::abs(s.coarse - v.coarse) <= 1e-13 * s.abs_fine);
        CHECK(v.abs_fine == doctest::Approx(s.abs_fine).epsilon(1e-13));
      }
  }

  TEST_CASE("dispatch names a kernel") {
    const std::string name = active_cone_kernel_name();
    CHECK((name == "avx2" || name == "scalar"));
    CHECK(active_cone_kernel() != nullptr);
  }
}
