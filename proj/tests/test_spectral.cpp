#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rdsplit/spectral.hpp"

using namespace rdsplit;

namespace {

constexpr double kPi = std::numbers::pi;

Field random_field(GridPtr g, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f = make_field(g);
  for (cplx& v : f.values) v = {dist(gen), dist(gen)};
  return f;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

// Fornberg weights for the m-th derivative on offsets -w..w (uniform h = 1;
// scale by h^-m outside).
std::vector<double> fd_weights(int m, int w) {
  const int nn = 2 * w + 1;
  std::vector<double> x(nn);
  for (int i = 0; i < nn; ++i) x[i] = i - w;
  // c[j][k]: weight of node j for derivative k
  std::vector<std::vector<double>> c(nn, std::vector<double>(m + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < nn; ++i) {
    const std::vector<double> prev = c[i - 1];  // read before in-place updates
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      for (int k = std::min(i, m); k >= 1; --k)
        c[j][k] = (x[i] * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = x[i] * c[j][0] / c3;
    }
    for (int k = std::min(i, m); k >= 1; --k)
      c[i][k] = c1 * (k * prev[k - 1] - x[i - 1] * prev[k]) / c2;
    c[i][0] = -c1 * x[i - 1] * prev[0] / c2;
    c1 = c2;
  }
  std::vector<double> wts(nn);
  for (int j = 0; j < nn; ++j) wts[j] = c[j][m];
  return wts;
}

}  // namespace

TEST_CASE("make_grid lays out nodes and DFT-ordered wavenumbers") {
  auto g = make_grid(1024, -kPi, kPi);
  CHECK(g->dx == doctest::Approx(2 * kPi / 1024));
  CHECK(g->nodes.front() == doctest::Approx(-kPi));
  CHECK(g->nodes.back() == doctest::Approx(kPi - g->dx));
  CHECK(g->wavenumbers[0] == 0.0);
  CHECK(g->wavenumbers[1] == doctest::Approx(1.0));
  CHECK(g->wavenumbers[511] == doctest::Approx(511.0));
  CHECK(g->wavenumbers[512] == doctest::Approx(-512.0));
  CHECK(g->wavenumbers[1023] == doctest::Approx(-1.0));

  auto g2 = make_grid(2, 0.0, 2 * kPi);
  CHECK(g2->wavenumbers[0] == 0.0);
  CHECK(g2->wavenumbers[1] == doctest::Approx(-1.0));

  auto g3 = make_grid(256, -1.25, 1.25);
  CHECK(g3->wavenumbers[3] == doctest::Approx(2 * kPi * 3 / 2.5));
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(100, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, 2.0, -2.0), std::invalid_argument);
}

TEST_CASE("transform round trip on random fields") {
  for (int n : {64, 256, 1024}) {
    auto g = make_grid(n, -kPi, kPi);
    const Field f = random_field(g, 7 + n);
    const Field back = dft_inverse(dft_forward(f), g);
    CHECK(max_diff(back, f) <= 1e-13 * max_abs(f));
  }
}

TEST_CASE("constant fields concentrate in bin zero") {
  auto g = make_grid(128, -kPi, kPi);
  Field f = make_field(g);
  const cplx c{0.7, -0.2};
  for (cplx& v : f.values) v = c;
  const auto spec = dft_forward(f);
  CHECK(std::abs(spec[0] - c * 128.0) <= 1e-13 * std::abs(c) * 128);
  for (std::size_t m = 1; m < spec.size(); ++m)
    CHECK(std::abs(spec[m]) <= 1e-14 * std::abs(c) * 128);

  // inverse direction: bin-0-only spectrum is a constant field
  std::vector<cplx> s0(128, cplx(0.0));
  s0[0] = 128.0 * c;
  const Field back = dft_inverse(s0, g);
  for (const cplx& v : back.values)
    CHECK(std::abs(v - c) <= 1e-14 * std::abs(c) * 128);
}

TEST_CASE("a pure mode lands in its own bin") {
  auto g = make_grid(64, -kPi, kPi);
  Field f = make_field(g);
  for (int j = 0; j < 64; ++j)
    f.values[j] = std::exp(cplx(0.0, g->nodes[j]));
  const auto spec = dft_forward(f);
  CHECK(std::abs(spec[1]) == doctest::Approx(64.0).epsilon(1e-12));
  for (std::size_t m = 0; m < spec.size(); ++m)
    if (m != 1) CHECK(std::abs(spec[m]) <= 1e-12 * 64);
}

TEST_CASE("zero spectrum inverts to the zero field") {
  auto g = make_grid(32, 0.0, 1.0);
  const std::vector<cplx> zero(32, cplx(0.0));
  CHECK(max_abs(dft_inverse(zero, g)) == 0.0);
}

TEST_CASE("transform linearity and Parseval") {
  auto g = make_grid(256, -kPi, kPi);
  const Field f = random_field(g, 21);
  const Field h = random_field(g, 22);
  const cplx a{1.3, -0.4}, b{-0.2, 2.2};

  Field comb = make_field(g);
  for (int j = 0; j < 256; ++j)
    comb.values[j] = a * f.values[j] + b * h.values[j];
  const auto sc = dft_forward(comb);
  const auto sf = dft_forward(f);
  const auto sh = dft_forward(h);
  for (int m = 0; m < 256; ++m)
    CHECK(std::abs(sc[m] - (a * sf[m] + b * sh[m])) <= 1e-11);

  double phys = 0, spec = 0;
  for (int m = 0; m < 256; ++m) {
    phys += std::norm(f.values[m]);
    spec += std::norm(sf[m]);
  }
  CHECK(spec == doctest::Approx(256.0 * phys).epsilon(1e-12));
}

TEST_CASE("second derivative of a sine mode is analytic") {
  auto g = make_grid(1024, -kPi, kPi);
  Field f = make_field(g);
  for (int j = 0; j < 1024; ++j) f.values[j] = std::sin(8.0 * g->nodes[j]);
  const Field d2 = spectral_derivative(f, 2);
  double err = 0.0;
  for (int j = 0; j < 1024; ++j)
    err = std::max(err, std::abs(d2.values[j] -
                                 cplx(-64.0 * std::sin(8.0 * g->nodes[j]))));
  CHECK(err <= 5e-10);  // k^2-amplified round-off; numpy lands near 3e-10 too
}

TEST_CASE("derivatives of constants vanish") {
  auto g = make_grid(64, -kPi, kPi);
  Field f = make_field(g);
  for (cplx& v : f.values) v = 3.25;
  for (int order : {1, 2, 3, 4})
    CHECK(max_abs(spectral_derivative(f, order)) <= 1e-12);
}

TEST_CASE("unsupported derivative order is rejected") {
  auto g = make_grid(64, -kPi, kPi);
  const Field f = make_field(g);
  CHECK_THROWS_AS(spectral_derivative(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(spectral_derivative(f, 5), std::invalid_argument);
}

TEST_CASE("fourth derivative matches an order-8 finite-difference oracle") {
  const int n = 4096;
  auto g = make_grid(n, -kPi, kPi);
  Field f = make_field(g);
  for (int j = 0; j < n; ++j)
    f.values[j] = std::exp(std::sin(8.0 * g->nodes[j]));
  const Field d4 = spectral_derivative(f, 4);

  const auto w = fd_weights(4, 6);
  const double h4 = std::pow(g->dx, 4);
  double max_rel = 0;
  double scale = max_abs(d4);
  for (int j = 0; j < n; ++j) {
    double fd = 0;
    for (int o = -6; o <= 6; ++o)
      fd += w[o + 6] * f.values[(j + o + n) % n].real();
    fd /= h4;
    max_rel = std::max(max_rel, std::abs(fd - d4.values[j].real()) / scale);
  }
  CHECK(max_rel <= 1e-5);
}

TEST_CASE("repeated second derivative equals the fourth on Nyquist-free data") {
  auto g = make_grid(256, -kPi, kPi);
  Field f = make_field(g);
  for (int j = 0; j < 256; ++j)
    f.values[j] = std::sin(3.0 * g->nodes[j]) + 0.5 * std::cos(17.0 * g->nodes[j]);
  const Field twice = spectral_derivative(spectral_derivative(f, 2), 2);
  const Field once = spectral_derivative(f, 4);
  CHECK(max_diff(twice, once) <= 1e-12 * max_abs(once));
}

TEST_CASE("odd-order derivatives zero the Nyquist bin") {
  auto g = make_grid(64, -kPi, kPi);
  std::vector<cplx> spec(64, cplx(0.0));
  spec[32] = 64.0;  // pure Nyquist mode
  const Field f = dft_inverse(spec, g);
  CHECK(max_abs(spectral_derivative(f, 1)) <= 1e-12);
  CHECK(max_abs(spectral_derivative(f, 3)) <= 1e-12);
  CHECK(max_abs(spectral_derivative(f, 2)) > 1.0);  // even orders keep it
}
