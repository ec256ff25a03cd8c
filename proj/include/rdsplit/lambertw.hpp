#ifndef RDSPLIT_LAMBERTW_HPP
#define RDSPLIT_LAMBERTW_HPP

#include <complex>

namespace rdsplit {

using cplx = std::complex<double>;

struct W0Result {
  cplx value;
  int iterations = 0;
  double residual = 0.0;  // |w e^w - z|, or |w + log w - zeta| on the log path
};

// Principal branch, w e^w = z. Real arguments take a real-arithmetic path and
// return exactly real values. Throws std::domain_error for real z < -1/e and
// std::runtime_error if the iteration fails to converge.
W0Result lambert_w0(cplx z);

// Initial guess: branch-point series near -1/e, asymptotic log z - log log z
// for |z| > 3, [2/2] Pade about 0 otherwise.
cplx lambert_w0_seed(cplx z);

// W0(exp(zeta)) without forming exp(zeta); usable for Re(zeta) beyond the
// overflow range. Real zeta yields an exactly real result.
W0Result lambert_w0_exp(cplx zeta);

}  // namespace rdsplit

#endif
