#include "opcalc/kernels.hpp"

namespace opcalc {

#ifndef OPCALC_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

const KernelTable& active_kernels() {
  static const KernelTable& chosen = avx2_kernels() ? *avx2_kernels() : scalar_kernels();
  return chosen;
}

}  // namespace opcalc
