#include "rdsplit/problems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rdsplit {
namespace {

constexpr double kPi = std::numbers::pi;

double linpot_ic(double x) { return 0.5 - 0.2 * std::exp(std::sin(8.0 * x)); }

double gs_fig2_u(double x) {
  return 0.0903 * (1.0 + 0.9 * std::exp(std::cos(3.0 * x)));
}
double gs_fig2_v(double x) {
  return 0.952 * (1.0 - 0.9 * std::sin(std::cos(x)));
}

double selfrep_u(double x) { return std::exp(-2.0 * x * x); }
double selfrep_v(double x) { return 0.1 + std::exp(-4.0 * x * x); }

double chaos_u(double x) {
  return 1.0 + std::exp(-2.0 * std::pow(10.0 * (x - 0.25), 8)) +
         std::exp(-2.0 * std::pow(10.0 * (x + 0.23), 8));
}
double chaos_v(double x) {
  return std::exp(-4.0 * std::pow(10.0 * x, 6)) +
         std::exp(-4.0 * std::pow(10.0 * (x - 0.75), 6));
}

Problem linpot(double D) {
  Problem p;
  p.kind = ProblemKind::linear_potential;
  p.params.D = D;
  p.params.potential = standard_potential;
  p.grid = make_grid(1024, -kPi, kPi);
  p.ordering = OperatorOrdering::B_first;  // heat as the second operator
  p.initial_u = linpot_ic;
  p.default_t_final = 1.0;  // harness convention; the paper leaves it open
  p.reference_dt = std::pow(2.0, -20);
  return p;
}

Problem gs_fig2(double Du, double Dv) {
  Problem p;
  p.kind = ProblemKind::gray_scott;
  p.params.D_u = Du;
  p.params.D_v = Dv;
  p.params.alpha = 0.09;
  p.params.beta = 0.086;
  p.grid = make_grid(512, -kPi, kPi);
  p.ordering = OperatorOrdering::A_first;  // linear system first
  p.nonlinear_flow = GsNonlinearFlow::exact;
  p.initial_u = gs_fig2_u;
  p.initial_v = gs_fig2_v;
  p.default_t_final = 10.0;
  p.reference_dt = 1e-4;
  return p;
}

}  // namespace

Field Problem::initial_u_field() const {
  if (!initial_u) throw std::logic_error("problem has no initial u");
  return sample(grid, initial_u);
}

GSState Problem::initial_state() const {
  if (kind != ProblemKind::gray_scott || !initial_v)
    throw std::logic_error("problem is not a two-species preset");
  return {sample(grid, initial_u), sample(grid, initial_v)};
}

Problem preset(const std::string& name) {
  if (name == "linpot-high") {
    Problem p = linpot(10.0);
    p.name = name;
    return p;
  }
  if (name == "linpot-low") {
    Problem p = linpot(0.005);
    p.name = name;
    return p;
  }
  if (name == "gs-high") {
    Problem p = gs_fig2(1.0, 0.01);
    p.name = name;
    return p;
  }
  if (name == "gs-low") {
    Problem p = gs_fig2(0.001, 0.001);
    p.name = name;
    return p;
  }
  if (name == "gs-selfrep") {
    Problem p;
    p.name = name;
    p.kind = ProblemKind::gray_scott;
    p.params.D_u = 0.001;
    p.params.D_v = 0.0001;
    p.params.alpha = 0.04;
    p.params.beta = 0.1;
    p.grid = make_grid(512, -1.5 * kPi, 1.5 * kPi);
    p.ordering = OperatorOrdering::A_first;
    p.nonlinear_flow = GsNonlinearFlow::midpoint;
    p.initial_u = selfrep_u;
    p.initial_v = selfrep_v;
    p.default_dt = 1.0;
    p.reference_dt = 1e-4;
    return p;
  }
  if (name == "gs-chaos") {
    Problem p;
    p.name = name;
    p.kind = ProblemKind::gray_scott;
    p.params.D_u = 2e-5;
    p.params.D_v = 1e-5;
    p.params.alpha = 0.028;
    p.params.beta = 0.081;
    p.grid = make_grid(256, -1.25, 1.25);
    p.ordering = OperatorOrdering::A_first;
    p.nonlinear_flow = GsNonlinearFlow::midpoint;
    p.initial_u = chaos_u;
    p.initial_v = chaos_v;
    p.default_dt = 0.25;
    p.reference_dt = 1e-4;
    return p;
  }
  std::ostringstream msg;
  msg << "unknown preset '" << name << "'; available:";
  for (const std::string& s : preset_names()) msg << " " << s;
  throw std::invalid_argument(msg.str());
}

std::vector<std::string> preset_names() {
  return {"linpot-high", "linpot-low", "gs-high",
          "gs-low",      "gs-selfrep", "gs-chaos"};
}

}  // namespace rdsplit
