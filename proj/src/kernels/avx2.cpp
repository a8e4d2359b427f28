#include <immintrin.h>

#include <cmath>

#include "opcalc/kernels.hpp"

namespace opcalc {

namespace {

void cgemm(std::size_t n, const double* ar, const double* ai, const double* br, const double* bi, double* cr,
           double* ci) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double xr = ar[i * n + k], xi = ai[i * n + k];
      if (xr == 0.0 && xi == 0.0) continue;
      const double* rowr = br + k * n;
      const double* rowi = bi + k * n;
      double* outr = cr + i * n;
      double* outi = ci + i * n;
      const __m256d vxr = _mm256_set1_pd(xr), vxi = _mm256_set1_pd(xi);
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d br4 = _mm256_loadu_pd(rowr + j), bi4 = _mm256_loadu_pd(rowi + j);
        __m256d re = _mm256_sub_pd(_mm256_mul_pd(vxr, br4), _mm256_mul_pd(vxi, bi4));
        __m256d im = _mm256_add_pd(_mm256_mul_pd(vxr, bi4), _mm256_mul_pd(vxi, br4));
        _mm256_storeu_pd(outr + j, _mm256_add_pd(_mm256_loadu_pd(outr + j), re));
        _mm256_storeu_pd(outi + j, _mm256_add_pd(_mm256_loadu_pd(outi + j), im));
      }
      for (; j < n; ++j) {
        outr[j] = outr[j] + (xr * rowr[j] - xi * rowi[j]);
        outi[j] = outi[j] + (xr * rowi[j] + xi * rowr[j]);
      }
    }
  }
}

// 4×4 block transpose of one plane with `sign` xor-ed into every element.
void transpose_block(const double* src, double* dst, std::size_t n, __m256d sign) {
  __m256d r0 = _mm256_xor_pd(_mm256_loadu_pd(src), sign);
  __m256d r1 = _mm256_xor_pd(_mm256_loadu_pd(src + n), sign);
  __m256d r2 = _mm256_xor_pd(_mm256_loadu_pd(src + 2 * n), sign);
  __m256d r3 = _mm256_xor_pd(_mm256_loadu_pd(src + 3 * n), sign);
  __m256d t0 = _mm256_unpacklo_pd(r0, r1), t1 = _mm256_unpackhi_pd(r0, r1);
  __m256d t2 = _mm256_unpacklo_pd(r2, r3), t3 = _mm256_unpackhi_pd(r2, r3);
  _mm256_storeu_pd(dst, _mm256_permute2f128_pd(t0, t2, 0x20));
  _mm256_storeu_pd(dst + n, _mm256_permute2f128_pd(t1, t3, 0x20));
  _mm256_storeu_pd(dst + 2 * n, _mm256_permute2f128_pd(t0, t2, 0x31));
  _mm256_storeu_pd(dst + 3 * n, _mm256_permute2f128_pd(t1, t3, 0x31));
}

void conj_transpose(std::size_t n, const double* ar, const double* ai, double* outr, double* outi) {
  const __m256d keep = _mm256_setzero_pd(), flip = _mm256_set1_pd(-0.0);
  const std::size_t whole = n - n % 4;
  for (std::size_t i = 0; i < whole; i += 4)
    for (std::size_t j = 0; j < whole; j += 4) {
      transpose_block(ar + i * n + j, outr + j * n + i, n, keep);
      transpose_block(ai + i * n + j, outi + j * n + i, n, flip);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i < whole ? whole : 0); j < n; ++j) {
      outr[j * n + i] = ar[i * n + j];
      outi[j * n + i] = -ai[i * n + j];
    }
}

double max_abs_diff(std::size_t n, const double* ar, const double* ai, const double* br, const double* bi,
                    std::size_t lo, std::size_t hi) {
  __m256d best = _mm256_setzero_pd();
  bool saw_nan = false;
  double tail = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    std::size_t j = lo;
    for (; j + 4 <= hi; j += 4) {
      const std::size_t at = i * n + j;
      __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(ar + at), _mm256_loadu_pd(br + at));
      __m256d di = _mm256_sub_pd(_mm256_loadu_pd(ai + at), _mm256_loadu_pd(bi + at));
      __m256d m = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di)));
      saw_nan |= _mm256_movemask_pd(_mm256_cmp_pd(m, m, _CMP_UNORD_Q)) != 0;
      best = _mm256_max_pd(best, m);
    }
    for (; j < hi; ++j) {
      const double dr = ar[i * n + j] - br[i * n + j];
      const double di = ai[i * n + j] - bi[i * n + j];
      const double m = std::sqrt(dr * dr + di * di);
      if (std::isnan(m)) saw_nan = true;
      if (m > tail) tail = m;
    }
  }
  if (saw_nan) return INFINITY;
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = tail;
  for (double v : lanes)
    if (v > out) out = v;
  return out;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2", cgemm, conj_transpose, max_abs_diff};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace opcalc
