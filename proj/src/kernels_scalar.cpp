#include "rdsplit/kernels.hpp"

namespace rdsplit::kernels {
namespace {

// Plain component formula, no NaN-recovery branch; keeps the rounding
// pattern identical to the vector variant.
inline cplx mul(cplx x, cplx y) {
  return {x.real() * y.real() - x.imag() * y.imag(),
          x.real() * y.imag() + x.imag() * y.real()};
}

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) dst[i] = mul(a[i], b[i]);
}

void cscale(cplx* dst, const cplx* a, cplx s, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) dst[i] = mul(s, a[i]);
}

void fft_pass(cplx* data, std::size_t count, std::size_t len, const cplx* tw) {
  const std::size_t half = len / 2;
  if (half == 1) {
    for (std::size_t i = 0; i < count; i += 2) {
      const cplx t = data[i + 1];
      data[i + 1] = data[i] - t;
      data[i] += t;
    }
    return;
  }
  for (std::size_t i = 0; i < count; i += len) {
    cplx* lo = data + i;
    cplx* hi = lo + half;
    for (std::size_t j = 0; j < half; ++j) {
      const cplx t = mul(tw[j], hi[j]);
      hi[j] = lo[j] - t;
      lo[j] += t;
    }
  }
}

double sum_abs2(const cplx* a, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    s += re * re + im * im;
  }
  return s;
}

double sum_abs2_diff(const cplx* a, const cplx* b, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    s += re * re + im * im;
  }
  return s;
}

double max_abs2(const cplx* a, std::size_t count) {
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    const double v = re * re + im * im;
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",   cmul,          cscale,
                       fft_pass,   sum_abs2,      sum_abs2_diff,
                       max_abs2};
  return ops;
}

}  // namespace rdsplit::kernels
