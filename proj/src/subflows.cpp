#include "rdsplit/subflows.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rdsplit/fft.hpp"
#include "rdsplit/kernels.hpp"
#include "rdsplit/lambertw.hpp"

namespace rdsplit {

double standard_potential(double x) {
  return (3.0 + std::sin(10.0 * x)) * std::cos(12.0 * x);
}

Field sample_potential(const FlowParams& p, GridPtr grid) {
  if (!p.potential)
    throw std::invalid_argument("sample_potential: no potential set");
  Field f = make_field(grid);
  for (int j = 0; j < grid->n; ++j) f.values[j] = p.potential(grid->nodes[j]);
  return f;
}

std::vector<cplx> heat_multiplier(const Grid& g, double D, cplx tau) {
  if (D < 0.0) throw std::invalid_argument("heat_flow: D must be >= 0");
  if (D * tau.real() < 0.0)
    throw std::domain_error(
        "heat_flow: Re(D tau) < 0 grows unboundedly (unstable stage "
        "coefficient)");
  std::vector<cplx> mult(g.n);
  for (int m = 0; m < g.n; ++m) {
    const double k = g.wavenumbers[m];
    mult[m] = std::exp(-D * k * k * tau);
  }
  return mult;
}

Field heat_flow(const Field& f, double D, cplx tau) {
  const auto mult = heat_multiplier(*f.grid, D, tau);
  auto spec = dft_forward(f);
  kernels::active_ops().cmul(spec.data(), spec.data(), mult.data(),
                             spec.size());
  return dft_inverse(spec, f.grid);
}

std::vector<cplx> potential_multiplier(const Field& potential, cplx tau) {
  std::vector<cplx> mult(potential.values.size());
  for (std::size_t j = 0; j < mult.size(); ++j)
    mult[j] = std::exp(tau * potential.values[j]);
  return mult;
}

Field potential_flow(const Field& f, const Field& potential, cplx tau) {
  if (!same_grid(f, potential))
    throw std::invalid_argument("potential_flow: grid mismatch");
  const auto mult = potential_multiplier(potential, tau);
  Field out = f;
  kernels::active_ops().cmul(out.values.data(), f.values.data(), mult.data(),
                             mult.size());
  return out;
}

GsLinearTables gs_linear_tables(const Grid& g, const FlowParams& p,
                                cplx tau) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw std::invalid_argument("gs_linear_flow: alpha, beta must be > 0");
  if (p.D_u < 0.0 || p.D_v < 0.0)
    throw std::invalid_argument("gs_linear_flow: diffusivities must be >= 0");
  if (tau.real() < 0.0)
    throw std::domain_error("gs_linear_flow: Re(tau) < 0 is unstable");
  GsLinearTables t;
  t.u_decay.resize(g.n);
  t.v_decay.resize(g.n);
  for (int m = 0; m < g.n; ++m) {
    const double k2 = g.wavenumbers[m] * g.wavenumbers[m];
    t.u_decay[m] = std::exp(-(p.alpha + p.D_u * k2) * tau);
    t.v_decay[m] = std::exp(-(p.beta + p.D_v * k2) * tau);
  }
  t.u_fixed0 = static_cast<double>(g.n);
  return t;
}

GSState gs_linear_flow(const GSState& s, const FlowParams& p, cplx tau) {
  if (!same_grid(s.u, s.v))
    throw std::invalid_argument("gs_linear_flow: u/v grid mismatch");
  const auto t = gs_linear_tables(*s.u.grid, p, tau);
  const auto& ops = kernels::active_ops();

  auto uh = dft_forward(s.u);
  ops.cmul(uh.data(), uh.data(), t.u_decay.data(), uh.size());
  uh[0] += t.u_fixed0 * (1.0 - t.u_decay[0]);

  auto vh = dft_forward(s.v);
  ops.cmul(vh.data(), vh.data(), t.v_decay.data(), vh.size());

  return {dft_inverse(uh, s.u.grid), dft_inverse(vh, s.v.grid)};
}

double gs_v_floor(const GSState& s) {
  const auto& ops = kernels::active_ops();
  const double su = std::sqrt(
      ops.max_abs2(s.u.values.data(), s.u.values.size()));
  const double sv = std::sqrt(
      ops.max_abs2(s.v.values.data(), s.v.values.size()));
  return 1e-8 * std::max(1.0, su + sv);
}

namespace {

// u = s0 - v, then v re-derived from u so the computed sum lands exactly
// back on s0.
inline void conserve(cplx s0, cplx& u, cplx& v) {
  u = s0 - v;
  v = s0 - u;
}

}  // namespace

GSState gs_nonlinear_flow_exact(const GSState& s, cplx tau, double v_floor) {
  if (!same_grid(s.u, s.v))
    throw std::invalid_argument("gs_nonlinear_flow: u/v grid mismatch");
  if (v_floor < 0.0) v_floor = gs_v_floor(s);

  GSState out{make_field(s.u.grid), make_field(s.v.grid)};
  const int n = s.u.grid->n;
  const bool real_case = tau.imag() == 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx u0 = s.u.values[j];
    const cplx v0 = s.v.values[j];
    if (std::abs(v0) < v_floor)
      throw std::domain_error(
          "gs_nonlinear_flow_exact: |v0| below floor at node " +
          std::to_string(j) + " (use the midpoint flow)");
    const cplx s0 = u0 + v0;
    const cplx r = u0 / v0;
    const cplx expo = r - s0 * s0 * tau;

    cplx w;
    const double log_mag =
        std::log(std::abs(r)) + expo.real();  // log |r e^expo|
    if (log_mag > 700.0) {
      // assemble the Lambert argument in log form to dodge overflow
      w = lambert_w0_exp(std::log(r) + expo).value;
    } else if (real_case && u0.imag() == 0.0 && v0.imag() == 0.0) {
      w = lambert_w0(r.real() * std::exp(expo.real())).value;
    } else {
      w = lambert_w0(r * std::exp(expo)).value;
    }

    cplx vn = s0 / (1.0 + w);
    cplx un;
    conserve(s0, un, vn);
    out.u.values[j] = un;
    out.v.values[j] = vn;
  }
  return out;
}

GSState gs_nonlinear_flow_midpoint(const GSState& s, cplx tau) {
  if (!same_grid(s.u, s.v))
    throw std::invalid_argument("gs_nonlinear_flow: u/v grid mismatch");
  GSState out{make_field(s.u.grid), make_field(s.v.grid)};
  const int n = s.u.grid->n;
  for (int j = 0; j < n; ++j) {
    const cplx u0 = s.u.values[j];
    const cplx v0 = s.v.values[j];
    const cplx s0 = u0 + v0;
    const double tol = 1e-14 * (1.0 + std::abs(v0));

    auto solve = [&](double damping, int cap, cplx v) -> std::pair<cplx, bool> {
      for (int it = 0; it < cap; ++it) {
        const cplx m = 0.5 * (v0 + v);
        const cplx F = v - v0 - tau * (s0 - m) * m * m;
        const cplx dF = 1.0 - tau * m * (s0 - 1.5 * m);
        const cplx step = F / dF;
        v -= damping * step;
        if (std::abs(step) <= tol) return {v, true};
      }
      return {v, false};
    };

    auto [v, ok] = solve(1.0, 30, v0);
    if (!ok) std::tie(v, ok) = solve(0.5, 60, v0);
    if (!ok)
      throw std::runtime_error(
          "gs_nonlinear_flow_midpoint: Newton failed at node " +
          std::to_string(j) + " (v0=" + std::to_string(v0.real()) + "+" +
          std::to_string(v0.imag()) + "i)");

    cplx un;
    conserve(s0, un, v);
    out.u.values[j] = un;
    out.v.values[j] = v;
  }
  return out;
}

void project_real(Field& f) {
  for (cplx& v : f.values) v = cplx(v.real(), 0.0);
}

void project_real(GSState& s) {
  project_real(s.u);
  project_real(s.v);
}

}  // namespace rdsplit
