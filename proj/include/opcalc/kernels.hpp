#pragma once

#include <cstddef>

namespace opcalc {

/// Dense complex kernels on n×n row-major matrices stored as separate real and
/// imaginary arrays. Every implementation evaluates the same expressions in
/// the same order, so results agree bit for bit.
struct KernelTable {
  const char* name;
  /// C += A·B. Zero entries of A are skipped.
  void (*cgemm)(std::size_t n, const double* ar, const double* ai, const double* br, const double* bi, double* cr,
                double* ci);
  /// out = Aᴴ.
  void (*conj_transpose)(std::size_t n, const double* ar, const double* ai, double* outr, double* outi);
  /// max |A_ij − B_ij| over lo ≤ i, j < hi.
  double (*max_abs_diff)(std::size_t n, const double* ar, const double* ai, const double* br, const double* bi,
                         std::size_t lo, std::size_t hi);
};

const KernelTable& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
/// AVX2 when available, scalar otherwise.
const KernelTable& active_kernels();

}  // namespace opcalc
