#ifndef RDSPLIT_KERNELS_HPP
#define RDSPLIT_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace rdsplit::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops used by the transforms and flow maps. Every
// entry point exists in a scalar reference version and (on x86-64 with
// AVX2) a vectorized version; the element-wise kernels produce bit-identical
// results in both, the reductions differ only by summation order.
struct Ops {
  const char* name;

  // dst[i] = a[i] * b[i]
  void (*cmul)(cplx* dst, const cplx* a, const cplx* b, std::size_t count);

  // dst[i] = s * a[i]
  void (*cscale)(cplx* dst, const cplx* a, cplx s, std::size_t count);

  // One radix-2 butterfly stage over blocks of `len` complex values.
  // tw holds len/2 twiddles; count and len are powers of two, len >= 2.
  void (*fft_pass)(cplx* data, std::size_t count, std::size_t len,
                   const cplx* tw);

  // sum_i |a[i]|^2
  double (*sum_abs2)(const cplx* a, std::size_t count);

  // sum_i |a[i] - b[i]|^2
  double (*sum_abs2_diff)(const cplx* a, const cplx* b, std::size_t count);

  // max_i |a[i]|^2 (finite inputs)
  double (*max_abs2)(const cplx* a, std::size_t count);
};

const Ops& scalar_ops();

// nullptr when AVX2 is not compiled in or the CPU lacks it.
const Ops* avx2_ops();

// Runtime-selected table. RDSPLIT_KERNELS=scalar|avx2 overrides; an
// unsatisfiable override falls back to scalar with a warning on stderr.
const Ops& active_ops();

}  // namespace rdsplit::kernels

#endif
