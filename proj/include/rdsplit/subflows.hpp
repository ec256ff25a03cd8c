#ifndef RDSPLIT_SUBFLOWS_HPP
#define RDSPLIT_SUBFLOWS_HPP

#include <functional>
#include <vector>

#include "rdsplit/spectral.hpp"

namespace rdsplit {

struct FlowParams {
  double D = 0.0;                           // linear-potential diffusivity
  double D_u = 0.0, D_v = 0.0;              // Gray-Scott diffusivities
  double alpha = 0.0, beta = 0.0;           // feed / kill rates
  std::function<double(double)> potential;  // potential profile f(x)
};

// (3 + sin(10x)) cos(12x), the fixed profile of the linear-potential problem
double standard_potential(double x);

Field sample_potential(const FlowParams& p, GridPtr grid);

struct GSState {
  Field u, v;
};

// ---- heat flow: u^ <- u^ * exp(-D k^2 tau) ----------------------------

// Throws std::domain_error when Re(D tau) < 0 (anti-diffusive direction).
std::vector<cplx> heat_multiplier(const Grid& g, double D, cplx tau);
Field heat_flow(const Field& f, double D, cplx tau);

// ---- potential flow: u <- u * exp(tau f(x)) ----------------------------

std::vector<cplx> potential_multiplier(const Field& potential, cplx tau);
Field potential_flow(const Field& f, const Field& potential, cplx tau);

// ---- Gray-Scott linear flow (both species) -----------------------------

struct GsLinearTables {
  std::vector<cplx> u_decay;  // exp(-(alpha + D_u k^2) tau) per bin
  std::vector<cplx> v_decay;  // exp(-(beta  + D_v k^2) tau) per bin
  // bin-0 fixed point of the u equation under the unnormalized-forward
  // convention: alpha*n / alpha = n
  double u_fixed0 = 0.0;
};

GsLinearTables gs_linear_tables(const Grid& g, const FlowParams& p, cplx tau);
GSState gs_linear_flow(const GSState& s, const FlowParams& p, cplx tau);

// ---- Gray-Scott nonlinear flow -----------------------------------------

// Default node floor below which the closed form is refused:
// 1e-8 * max(1, ||u0+v0||_inf).
double gs_v_floor(const GSState& s);

// Closed form via W0: v = s0 / (1 + W0[(u0/v0) exp(u0/v0 - s0^2 tau)]),
// u = s0 - v. u+v is reconstructed so that u+v == u0+v0 bit for bit.
// Throws std::domain_error when some |v0| < v_floor.
GSState gs_nonlinear_flow_exact(const GSState& s, cplx tau,
                                double v_floor = -1.0);

// Implicit midpoint rule for v_t = (s0 - v) v^2, uniformly valid in v0.
GSState gs_nonlinear_flow_midpoint(const GSState& s, cplx tau);

// Discard imaginary parts (applied after each full composition step).
void project_real(Field& f);
void project_real(GSState& s);

}  // namespace rdsplit

#endif
