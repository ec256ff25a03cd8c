#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rdsplit/subflows.hpp"

using namespace rdsplit;

namespace {

constexpr double kPi = std::numbers::pi;

Field field_of(GridPtr g, double (*fn)(double)) { return sample(g, fn); }

double max_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

GSState random_state(GridPtr g, unsigned seed, bool complexify = false) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(0.05, 1.5);
  std::uniform_real_distribution<double> imag(-0.2, 0.2);
  GSState s{make_field(g), make_field(g)};
  for (int j = 0; j < g->n; ++j) {
    s.u.values[j] = cplx(dist(gen), complexify ? imag(gen) : 0.0);
    s.v.values[j] = cplx(dist(gen), complexify ? imag(gen) : 0.0);
  }
  return s;
}

// step-halving RK4 with Richardson control for v' = (s0 - v) v^2
double ode_oracle(double v0, double s0, double t) {
  auto rhs = [s0](double v) { return (s0 - v) * v * v; };
  auto rk4 = [&](double v, double h, long n) {
    for (long i = 0; i < n; ++i) {
      const double k1 = rhs(v);
      const double k2 = rhs(v + 0.5 * h * k1);
      const double k3 = rhs(v + 0.5 * h * k2);
      const double k4 = rhs(v + h * k3);
      v += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return v;
  };
  long n = 64;
  double prev = rk4(v0, t / n, n);
  for (int it = 0; it < 16; ++it) {
    n *= 2;
    const double cur = rk4(v0, t / n, n);
    if (std::abs(cur - prev) < 1e-14) return cur + (cur - prev) / 15.0;
    prev = cur;
  }
  return prev;
}

}  // namespace

TEST_CASE("heat flow fixes constants and damps single modes analytically") {
  auto g = make_grid(256, -kPi, kPi);
  Field c = make_field(g);
  for (cplx& v : c.values) v = 0.8;
  CHECK(max_diff(heat_flow(c, 5.0, cplx(0.3, 0.1)), c) <= 1e-13);

  Field s8 = make_field(g);
  for (int j = 0; j < 256; ++j) s8.values[j] = std::sin(8.0 * g->nodes[j]);
  const Field out = heat_flow(s8, 10.0, 0.01);
  const double decay = std::exp(-6.4);
  for (int j = 0; j < 256; ++j)
    CHECK(std::abs(out.values[j] - decay * s8.values[j]) <= 1e-12);
}

TEST_CASE("heat flow rejects the anti-diffusive direction") {
  auto g = make_grid(64, -kPi, kPi);
  const Field f = make_field(g);
  CHECK_THROWS_AS(heat_flow(f, 1.0, cplx(-0.1, 0.5)), std::domain_error);
  CHECK_NOTHROW(heat_flow(f, 0.0, cplx(-0.1, 0.5)));  // D = 0 is inert
}

TEST_CASE("heat flow semigroup property") {
  auto g = make_grid(256, -kPi, kPi);
  Field f = make_field(g);
  for (int j = 0; j < 256; ++j)
    f.values[j] = std::exp(std::sin(3.0 * g->nodes[j]));
  const cplx tau(0.02, 0.007);
  const Field once = heat_flow(f, 2.0, tau);
  const Field twice = heat_flow(heat_flow(f, 2.0, tau / 2.0), 2.0, tau / 2.0);
  CHECK(max_diff(once, twice) <= 1e-13 * max_abs(once));
}

TEST_CASE("potential flow: identity at tau 0, uniform scaling, exact split") {
  auto g = make_grid(128, -kPi, kPi);
  FlowParams p;
  p.potential = standard_potential;
  const Field pot = sample_potential(p, g);

  Field f = make_field(g);
  for (int j = 0; j < 128; ++j)
    f.values[j] = cplx(std::cos(g->nodes[j]), 0.3);

  CHECK(max_diff(potential_flow(f, pot, cplx(0.0)), f) == 0.0);

  Field cpot = make_field(g);
  for (cplx& v : cpot.values) v = 2.0;
  const Field scaled = potential_flow(f, cpot, 0.25);
  for (int j = 0; j < 128; ++j)
    CHECK(std::abs(scaled.values[j] - f.values[j] * std::exp(0.5)) <= 1e-13);

  // pointwise exponentials commute, so two half steps equal one full step
  // except for one extra rounding
  const cplx tau(0.4, -0.2);
  const Field full = potential_flow(f, pot, tau);
  const Field halves =
      potential_flow(potential_flow(f, pot, tau / 2.0), pot, tau / 2.0);
  CHECK(max_diff(full, halves) <= 1e-14 * max_abs(full));
}

TEST_CASE("gray-scott linear flow holds its fixed point and decays v") {
  auto g = make_grid(128, -kPi, kPi);
  FlowParams p;
  p.D_u = 1.0;
  p.D_v = 0.01;
  p.alpha = 0.09;
  p.beta = 0.086;

  GSState s{make_field(g), make_field(g)};
  for (cplx& v : s.u.values) v = 1.0;
  const GSState out = gs_linear_flow(s, p, cplx(0.7, 0.2));
  for (int j = 0; j < 128; ++j) {
    CHECK(std::abs(out.u.values[j] - 1.0) <= 1e-12);
    CHECK(std::abs(out.v.values[j]) <= 1e-14);
  }

  // tau = 0 is the identity
  const GSState s2 = random_state(g, 5);
  const GSState id = gs_linear_flow(s2, p, cplx(0.0));
  CHECK(max_diff(id.u, s2.u) <= 1e-14);
  CHECK(max_diff(id.v, s2.v) <= 1e-14);

  // long-time limit: u -> 1, v -> 0
  const GSState limit = gs_linear_flow(s2, p, 50.0);
  for (int j = 0; j < 128; ++j) {
    CHECK(std::abs(limit.u.values[j] - 1.0) <= 1e-13);
    CHECK(std::abs(limit.v.values[j]) <= 1e-13);
  }
}

TEST_CASE("gray-scott linear flow semigroup") {
  auto g = make_grid(64, -kPi, kPi);
  FlowParams p;
  p.D_u = 0.4;
  p.D_v = 0.02;
  p.alpha = 0.09;
  p.beta = 0.086;
  const GSState s = random_state(g, 11);
  const cplx tau(0.13, 0.05);
  const GSState once = gs_linear_flow(s, p, tau);
  const GSState twice =
      gs_linear_flow(gs_linear_flow(s, p, tau / 2.0), p, tau / 2.0);
  CHECK(max_diff(once.u, twice.u) <= 1e-12 * (1.0 + max_abs(once.u)));
  CHECK(max_diff(once.v, twice.v) <= 1e-12 * (1.0 + max_abs(once.v)));
}

TEST_CASE("exact nonlinear flow: consistency anchors") {
  auto g = make_grid(2, 0.0, 2 * kPi);

  // tau = 0 with u0 = v0 = 0.5: Lambert argument e, W0 = 1, state unchanged
  GSState s{make_field(g), make_field(g)};
  for (cplx& v : s.u.values) v = 0.5;
  for (cplx& v : s.v.values) v = 0.5;
  const GSState out = gs_nonlinear_flow_exact(s, cplx(0.0));
  CHECK(max_diff(out.u, s.u) <= 1e-15);
  CHECK(max_diff(out.v, s.v) <= 1e-15);

  // u0 = 0 everywhere: v is a fixed point
  GSState s0{make_field(g), make_field(g)};
  for (cplx& v : s0.v.values) v = 0.7;
  const GSState out0 = gs_nonlinear_flow_exact(s0, cplx(0.9, 0.1));
  CHECK(max_diff(out0.v, s0.v) <= 1e-14);
  CHECK(max_abs(out0.u) <= 1e-14);
}

TEST_CASE("exact nonlinear flow matches the scalar ODE oracle") {
  auto g = make_grid(2, 0.0, 2 * kPi);
  GSState s{make_field(g), make_field(g)};
  for (cplx& v : s.u.values) v = 0.6;
  for (cplx& v : s.v.values) v = 0.4;
  const GSState out = gs_nonlinear_flow_exact(s, 1.0);
  const double oracle = ode_oracle(0.4, 1.0, 1.0);
  // frozen from the oracle (and cross-checked against a high-order
  // adaptive integration): v(1) = 0.51195531371588857
  CHECK(oracle == doctest::Approx(0.51195531371588857).epsilon(1e-12));
  CHECK(out.v.values[0].real() == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(out.v.values[0].imag() == 0.0);
  CHECK(out.u.values[0].real() ==
        doctest::Approx(1.0 - oracle).epsilon(1e-12));
}

TEST_CASE("exact nonlinear flow refuses nodes at the v floor") {
  auto g = make_grid(2, 0.0, 2 * kPi);
  GSState s{make_field(g), make_field(g)};
  s.u.values[0] = 0.5;
  s.v.values[0] = 1e-12;  // below 1e-8 * max(1, ||s0||)
  s.u.values[1] = 0.5;
  s.v.values[1] = 0.5;
  CHECK_THROWS_AS(gs_nonlinear_flow_exact(s, 0.1), std::domain_error);
}

TEST_CASE("exact nonlinear flow survives huge Lambert arguments") {
  auto g = make_grid(2, 0.0, 2 * kPi);
  GSState s{make_field(g), make_field(g)};
  for (cplx& v : s.u.values) v = 1.0;
  for (cplx& v : s.v.values) v = 1e-4;  // u0/v0 = 1e4, e^(u0/v0) overflows
  const GSState out = gs_nonlinear_flow_exact(s, 1e-6);
  CHECK(std::isfinite(out.v.values[0].real()));
  // v grows monotonically toward s0 under v' = (s0-v)v^2 > 0
  CHECK(out.v.values[0].real() > 1e-4);
  CHECK(out.v.values[0].real() < 1.1);
}

TEST_CASE("midpoint flow: identity at tau 0 and the v0 = 0 root") {
  auto g = make_grid(2, 0.0, 2 * kPi);
  GSState s{make_field(g), make_field(g)};
  s.u.values[0] = 0.8;
  s.v.values[0] = 0.0;
  s.u.values[1] = 0.3;
  s.v.values[1] = 0.9;
  const GSState id = gs_nonlinear_flow_midpoint(s, cplx(0.0));
  CHECK(max_diff(id.u, s.u) == 0.0);
  CHECK(max_diff(id.v, s.v) == 0.0);

  const GSState out = gs_nonlinear_flow_midpoint(s, 0.5);
  CHECK(out.v.values[0] == cplx(0.0));  // v = 0 stays the selected root
  CHECK(out.u.values[0] == cplx(0.8));
}

TEST_CASE("midpoint flow agrees with the exact flow at second order") {
  auto g = make_grid(2, 0.0, 2 * kPi);
  GSState s{make_field(g), make_field(g)};
  for (cplx& v : s.u.values) v = 0.6;
  for (cplx& v : s.v.values) v = 0.4;

  double prev = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double tau = 0.01 / (1 << i);
    const GSState a = gs_nonlinear_flow_midpoint(s, tau);
    const GSState b = gs_nonlinear_flow_exact(s, tau);
    const double d = std::abs(a.v.values[0] - b.v.values[0]);
    CHECK(d < 1e-6);
    if (i > 0) CHECK(prev / d == doctest::Approx(8.0).epsilon(0.15));
    prev = d;
  }
}

TEST_CASE("conservation is bit-exact for both nonlinear flows") {
  auto g = make_grid(1024, -kPi, kPi);
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> re(-0.5, 0.5);
  for (bool complexify : {false, true}) {
    const GSState s = random_state(g, complexify ? 42 : 43, complexify);
    const cplx tau(0.25, complexify ? re(gen) : 0.0);
    for (bool midpoint : {false, true}) {
      const GSState out = midpoint
                              ? gs_nonlinear_flow_midpoint(s, tau)
                              : gs_nonlinear_flow_exact(s, tau);
      for (int j = 0; j < g->n; ++j) {
        const cplx before = s.u.values[j] + s.v.values[j];
        const cplx after = out.u.values[j] + out.v.values[j];
        CHECK(before == after);  // bit-for-bit
      }
    }
  }
}

TEST_CASE("real tau on real states leaves no imaginary dust") {
  auto g = make_grid(256, -kPi, kPi);
  const GSState s = random_state(g, 77);
  const GSState e = gs_nonlinear_flow_exact(s, 0.37);
  const GSState m = gs_nonlinear_flow_midpoint(s, 0.37);
  CHECK(max_imag(e.u) == 0.0);
  CHECK(max_imag(e.v) == 0.0);
  CHECK(max_imag(m.u) == 0.0);
  CHECK(max_imag(m.v) == 0.0);

  FlowParams p;
  p.D_u = 0.3;
  p.D_v = 0.1;
  p.alpha = 0.09;
  p.beta = 0.086;
  const GSState l = gs_linear_flow(s, p, 0.37);
  CHECK(max_imag(l.u) <= 1e-14 * max_abs(l.u));
  CHECK(max_imag(l.v) <= 1e-14 * max_abs(l.v));
}

TEST_CASE("first-order consistency of the exact nonlinear flow") {
  // (phi_tau(v) - v)/tau -> (s0 - v) v^2 as tau -> 0
  auto g = make_grid(2, 0.0, 2 * kPi);
  GSState s{make_field(g), make_field(g)};
  for (cplx& v : s.u.values) v = 0.3;
  for (cplx& v : s.v.values) v = 0.9;
  const double rhs = (1.2 - 0.9) * 0.81;
  for (double tau : {1e-5, 1e-6}) {
    const GSState out = gs_nonlinear_flow_exact(s, tau);
    const double quotient = (out.v.values[0].real() - 0.9) / tau;
    CHECK(quotient == doctest::Approx(rhs).epsilon(1e-3 * tau / 1e-6));
  }
}
