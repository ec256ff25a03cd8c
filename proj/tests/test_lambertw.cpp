#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rdsplit/lambertw.hpp"

using rdsplit::cplx;
using rdsplit::lambert_w0;
using rdsplit::lambert_w0_exp;
using rdsplit::lambert_w0_seed;

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

// independent route for real arguments: bisection on w e^w = z
double w0_bisect(double z) {
  double lo = -1.0, hi = 710.0;
  auto g = [](double w) { return w * std::exp(w); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < z ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double resid(cplx w, cplx z) { return std::abs(w * std::exp(w) - z); }

}  // namespace

TEST_CASE("trivial anchors") {
  CHECK(lambert_w0(cplx(0.0)).value == cplx(0.0));
  CHECK(std::abs(lambert_w0(cplx(std::numbers::e)).value - 1.0) <= 1e-14);
  CHECK(std::abs(lambert_w0(cplx(-kInvE)).value - (-1.0)) <= 1e-14);
}

TEST_CASE("frozen spot values") {
  CHECK(lambert_w0(cplx(2.5)).value.real() ==
        doctest::Approx(0.958586356728702912).epsilon(1e-15));
  CHECK(lambert_w0(cplx(1e6)).value.real() ==
        doctest::Approx(11.3833580861400526).epsilon(1e-15));
  CHECK(lambert_w0(cplx(1e-8)).value.real() ==
        doctest::Approx(9.9999999000000015e-9).epsilon(1e-15));

  const cplx w1 = lambert_w0(cplx(0.5, 0.5)).value;
  CHECK(w1.real() == doctest::Approx(0.404316123531212789).epsilon(1e-14));
  CHECK(w1.imag() == doctest::Approx(0.243437756884253956).epsilon(1e-14));

  const cplx w2 = lambert_w0(cplx(-0.25, 0.1)).value;
  CHECK(w2.real() == doctest::Approx(-0.305459984506700685).epsilon(1e-13));
  CHECK(w2.imag() == doctest::Approx(0.200619748275646509).epsilon(1e-13));

  const cplx wi = lambert_w0(cplx(0.0, 1.0)).value;
  CHECK(wi.real() == doctest::Approx(0.374699020737117494).epsilon(1e-14));
  CHECK(wi.imag() == doctest::Approx(0.576412723031435283).epsilon(1e-14));
  CHECK(resid(wi, cplx(0.0, 1.0)) <= 1e-14 * 2.0);
}

TEST_CASE("defining identity over the modulus-phase grid") {
  // moduli 1e-8..1e8 log-spaced, 16 phases; the real ray below -1/e is the
  // rejected cut and is excluded like any other unaccepted point
  for (int im = 0; im <= 32; ++im) {
    const double mod = std::pow(10.0, -8.0 + 0.5 * im);
    for (int ip = 0; ip < 16; ++ip) {
      const double ph = 2.0 * std::numbers::pi * ip / 16.0;
      cplx z = std::polar(mod, ph);
      if (ip == 0) z = cplx(mod, 0.0);
      if (ip == 8) {
        z = cplx(-mod, 0.0);
        if (-mod < -kInvE) continue;
      }
      CAPTURE(mod);
      CAPTURE(ph);
      const auto r = lambert_w0(z);
      CHECK(r.residual <= 1e-14 * (1.0 + std::abs(z)));
    }
  }
}

TEST_CASE("real arguments stay exactly real and match bisection") {
  for (double z : {-0.367, -0.2, -1e-3, 1e-6, 0.3, 1.0, 7.5, 123.0, 1e8}) {
    const auto r = lambert_w0(cplx(z));
    CHECK(r.value.imag() == 0.0);
    const double oracle = w0_bisect(z);
    CHECK(r.value.real() ==
          doctest::Approx(oracle).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("monotone on the real axis") {
  double prev = lambert_w0(cplx(-kInvE)).value.real();
  for (double z : {-0.3, -0.1, 0.0, 0.5, 2.0, 40.0, 1e5}) {
    const double w = lambert_w0(cplx(z)).value.real();
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("conjugate symmetry") {
  for (cplx z : {cplx(0.4, 1.1), cplx(-2.0, 0.3), cplx(1e4, -5.0),
                 cplx(-0.3, 1e-3)}) {
    const cplx a = lambert_w0(z).value;
    const cplx b = lambert_w0(std::conj(z)).value;
    CHECK(std::abs(a - std::conj(b)) <= 1e-13 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("real argument below the branch point is rejected") {
  CHECK_THROWS_AS(lambert_w0(cplx(-0.4)), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(cplx(-5.0)), std::domain_error);
}

TEST_CASE("seed quality") {
  CHECK(lambert_w0_seed(cplx(0.0)) == cplx(0.0));

  // within 10% of the converged value at large modulus
  const double w6 = lambert_w0(cplx(1e6)).value.real();
  CHECK(std::abs(lambert_w0_seed(cplx(1e6)).real() - w6) <= 0.1 * w6);

  // branch-point expansion near -1/e
  const double zb = -kInvE + 1e-6;
  const double wb = lambert_w0(cplx(zb)).value.real();
  CHECK(std::abs(lambert_w0_seed(cplx(zb)).real() - wb) <= 1e-8);
  CHECK(wb == doctest::Approx(-0.997670166272007889).epsilon(1e-12));
}

TEST_CASE("log-domain evaluation handles overflowing arguments") {
  // zeta real: W0(e^zeta) with e^zeta far beyond double range
  const auto big = lambert_w0_exp(cplx(1000.0));
  CHECK(big.value.imag() == 0.0);
  // w + log w = 1000
  CHECK(big.value.real() + std::log(big.value.real()) ==
        doctest::Approx(1000.0).epsilon(1e-14));
  CHECK(big.residual <= 1e-12 * 1001);

  // agreement with the direct path where both work
  for (double ze : {-3.0, 0.0, 2.0, 20.0, 600.0}) {
    const double a = lambert_w0_exp(cplx(ze)).value.real();
    const double b = lambert_w0(cplx(std::exp(ze))).value.real();
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }

  // deep underflow degenerates to z itself
  CHECK(lambert_w0_exp(cplx(-800.0)).value == cplx(std::exp(-800.0)));

  // complex log-domain: residual of w + log w - zeta
  const auto c = lambert_w0_exp(cplx(900.0, 2.0));
  CHECK(c.residual <= 1e-12 * 901);
}

TEST_CASE("iteration reports are populated") {
  const auto r = lambert_w0(cplx(3.7, -1.2));
  CHECK(r.iterations >= 1);
  CHECK(r.iterations <= 50);
  CHECK(r.residual <= 1e-14 * (1.0 + std::abs(cplx(3.7, -1.2))));
}
