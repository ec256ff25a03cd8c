#include "rdsplit/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace rdsplit::kernels {
namespace {

// Two complex doubles per __m256d: [re0 im0 re1 im1].
// Product via mul/addsub only (no FMA), so each component sees exactly the
// scalar rounding sequence re = xr*yr - xi*yi, im = xr*yi + xi*yr.
inline __m256d cmul2(__m256d x, __m256d y) {
  const __m256d yr = _mm256_movedup_pd(y);         // [yr0 yr0 yr1 yr1]
  const __m256d yi = _mm256_permute_pd(y, 0xF);    // [yi0 yi0 yi1 yi1]
  const __m256d xs = _mm256_permute_pd(x, 0x5);    // [im0 re0 im1 re1]
  return _mm256_addsub_pd(_mm256_mul_pd(x, yr), _mm256_mul_pd(xs, yi));
}

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t count) {
  std::size_t i = 0;
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* pd = reinterpret_cast<double*>(dst);
  for (; i + 2 <= count; i += 2) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * i);
    const __m256d y = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(pd + 2 * i, cmul2(y, x));
  }
  for (; i < count; ++i) {
    const cplx x = a[i], y = b[i];
    dst[i] = {x.real() * y.real() - x.imag() * y.imag(),
              x.real() * y.imag() + x.imag() * y.real()};
  }
}

void cscale(cplx* dst, const cplx* a, cplx s, std::size_t count) {
  const __m256d sv = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  std::size_t i = 0;
  const double* pa = reinterpret_cast<const double*>(a);
  double* pd = reinterpret_cast<double*>(dst);
  for (; i + 2 <= count; i += 2) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * i);
    _mm256_storeu_pd(pd + 2 * i, cmul2(sv, x));
  }
  for (; i < count; ++i) {
    const cplx x = a[i];
    dst[i] = {s.real() * x.real() - s.imag() * x.imag(),
              s.real() * x.imag() + s.imag() * x.real()};
  }
}

void fft_pass(cplx* data, std::size_t count, std::size_t len, const cplx* tw) {
  const std::size_t half = len / 2;
  double* pd = reinterpret_cast<double*>(data);
  if (half == 1) {
    for (std::size_t i = 0; i < count; i += 2) {
      const cplx t = data[i + 1];
      data[i + 1] = data[i] - t;
      data[i] += t;
    }
    return;
  }
  const double* pt = reinterpret_cast<const double*>(tw);
  for (std::size_t i = 0; i < count; i += len) {
    double* lo = pd + 2 * i;
    double* hi = lo + 2 * half;
    for (std::size_t j = 0; j < half; j += 2) {
      const __m256d w = _mm256_loadu_pd(pt + 2 * j);
      const __m256d h = _mm256_loadu_pd(hi + 2 * j);
      const __m256d l = _mm256_loadu_pd(lo + 2 * j);
      const __m256d t = cmul2(h, w);  // tw*hi with x=h: components match mul(tw, hi)
      _mm256_storeu_pd(hi + 2 * j, _mm256_sub_pd(l, t));
      _mm256_storeu_pd(lo + 2 * j, _mm256_add_pd(l, t));
    }
  }
}

double sum_abs2(const cplx* a, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* pa = reinterpret_cast<const double*>(a);
  for (; i + 2 <= count; i += 2) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < count; ++i)
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

double sum_abs2_diff(const cplx* a, const cplx* b, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  for (; i + 2 <= count; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i),
                                    _mm256_loadu_pd(pb + 2 * i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < count; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    s += re * re + im * im;
  }
  return s;
}

double max_abs2(const cplx* a, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* pa = reinterpret_cast<const double*>(a);
  for (; i + 2 <= count; i += 2) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(x, x);
    const __m256d sw = _mm256_permute_pd(sq, 0x5);
    acc = _mm256_max_pd(acc, _mm256_add_pd(sq, sw));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = lanes[0];
  if (lanes[2] > m) m = lanes[2];
  for (; i < count; ++i) {
    const double v =
        a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops{"avx2",     cmul,          cscale,
                       fft_pass,   sum_abs2,      sum_abs2_diff,
                       max_abs2};
  return &ops;
}

}  // namespace rdsplit::kernels

#else

namespace rdsplit::kernels {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace rdsplit::kernels

#endif
