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
      for (std::size_t j = 0; j < n; ++j) {
        outr[j] = outr[j] + (xr * rowr[j] - xi * rowi[j]);
        outi[j] = outi[j] + (xr * rowi[j] + xi * rowr[j]);
      }
    }
  }
}

void conj_transpose(std::size_t n, const double* ar, const double* ai, double* outr, double* outi) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      outr[j * n + i] = ar[i * n + j];
      outi[j * n + i] = -ai[i * n + j];
    }
}

double max_abs_diff(std::size_t n, const double* ar, const double* ai, const double* br, const double* bi,
                    std::size_t lo, std::size_t hi) {
  double best = 0.0;
  for (std::size_t i = lo; i < hi; ++i)
    for (std::size_t j = lo; j < hi; ++j) {
      const double dr = ar[i * n + j] - br[i * n + j];
      const double di = ai[i * n + j] - bi[i * n + j];
      const double m = std::sqrt(dr * dr + di * di);
      if (m > best || std::isnan(m)) best = std::isnan(m) ? INFINITY : m;
    }
  return best;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", cgemm, conj_transpose, max_abs_diff};
  return table;
}

}  // namespace opcalc
