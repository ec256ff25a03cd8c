#include "rdsplit/lambertw.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdsplit {
namespace {

constexpr double kE = std::numbers::e;
constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxIter = 50;

bool is_real(cplx z) { return z.imag() == 0.0; }

double branch_seed_real(double z) {
  // 2(ez+1) can round slightly negative at z = -1/e
  const double q = std::max(0.0, 2.0 * (kE * z + 1.0));
  const double p = std::sqrt(q);
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

cplx branch_seed(cplx z) {
  const cplx p = std::sqrt(2.0 * (kE * z + 1.0));
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

cplx asymptotic_seed(cplx z) {
  const cplx l1 = std::log(z);
  const cplx l2 = std::log(l1);
  return l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
}

cplx pade_seed(cplx z) {
  const cplx num = 1.0 + z * (1.9 + z * (17.0 / 60.0));
  const cplx den = 1.0 + z * (2.9 + z * (101.0 / 60.0));
  if (std::abs(den) < 0.2) return branch_seed(z);  // pole at z ~ -1.246
  return z * num / den;
}

double halley_real(double z, double w, int& iters) {
  for (iters = 0; iters < kMaxIter; ++iters) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (f == 0.0) return w;
    const double fp = ew * (1.0 + w);
    const double step = f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)));
    w -= step;
    if (w < -1.0) w = -1.0;  // keep on the principal branch
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  throw std::runtime_error("lambert_w0: real iteration did not converge");
}

cplx halley_complex(cplx z, cplx w, int& iters) {
  for (iters = 0; iters < kMaxIter; ++iters) {
    const cplx ew = std::exp(w);
    const cplx f = w * ew - z;
    if (f == cplx(0.0, 0.0)) return w;
    const cplx fp = ew * (1.0 + w);
    const cplx step = f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)));
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  throw std::runtime_error("lambert_w0: iteration did not converge");
}

// Newton on g(w) = w + log w - zeta; valid when Re(zeta) is large so w is
// far from 0 and -1.
cplx log_newton(cplx zeta, cplx w, int& iters) {
  for (iters = 0; iters < kMaxIter; ++iters) {
    const cplx g = w + std::log(w) - zeta;
    const cplx step = g * w / (w + 1.0);
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  throw std::runtime_error("lambert_w0_exp: iteration did not converge");
}

}  // namespace

cplx lambert_w0_seed(cplx z) {
  if (is_real(z)) {
    const double x = z.real();
    if (std::abs(x + kInvE) < 0.3) return branch_seed_real(x);
    if (std::abs(x) > 3.0) return asymptotic_seed(x).real();
    const double num = 1.0 + x * (1.9 + x * (17.0 / 60.0));
    const double den = 1.0 + x * (2.9 + x * (101.0 / 60.0));
    if (std::abs(den) < 0.2) return branch_seed_real(x);
    return x * num / den;
  }
  if (std::abs(z + kInvE) < 0.3) return branch_seed(z);
  if (std::abs(z) > 3.0) return asymptotic_seed(z);
  return pade_seed(z);
}

W0Result lambert_w0(cplx z) {
  if (z == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), 0, 0.0};

  W0Result r;
  if (is_real(z)) {
    const double x = z.real();
    if (x < -kInvE)
      throw std::domain_error(
          "lambert_w0: real argument below -1/e has no principal-branch "
          "real value");
    double w = lambert_w0_seed(x).real();
    w = halley_real(x, w, r.iterations);
    r.value = w;
    r.residual = std::abs(w * std::exp(w) - x);
    return r;
  }
  cplx w = lambert_w0_seed(z);
  w = halley_complex(z, w, r.iterations);
  r.value = w;
  r.residual = std::abs(w * std::exp(w) - z);
  return r;
}

W0Result lambert_w0_exp(cplx zeta) {
  if (is_real(zeta)) {
    const double x = zeta.real();
    if (x < -700.0) {
      const double w = std::exp(x);  // W0(z) = z + O(z^2), z below 1e-304
      return {w, 0, 0.0};
    }
    if (x <= 700.0) return lambert_w0(std::exp(x));
    W0Result r;
    double w = x - std::log(x);
    cplx wc = log_newton(x, w, r.iterations);
    r.value = wc.real();
    r.residual = std::abs(wc.real() + std::log(wc.real()) - x);
    return r;
  }
  if (zeta.real() < -700.0) {
    const cplx w = std::exp(zeta);
    return {w, 0, 0.0};
  }
  if (zeta.real() <= 700.0) return lambert_w0(std::exp(zeta));
  W0Result r;
  cplx w = log_newton(zeta, zeta - std::log(zeta), r.iterations);
  r.value = w;
  r.residual = std::abs(w + std::log(w) - zeta);
  return r;
}

}  // namespace rdsplit
