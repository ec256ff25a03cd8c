#ifndef RDSPLIT_STEPPING_HPP
#define RDSPLIT_STEPPING_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rdsplit/fft.hpp"
#include "rdsplit/kernels.hpp"
#include "rdsplit/schemes.hpp"
#include "rdsplit/subflows.hpp"

namespace rdsplit {

// Which flow receives the a-coefficient stream (and is applied first within
// each stage). B_first realizes exp(B a1 dt) exp(A b1 dt) ... ; the
// linear-potential runs use B_first (heat as the second operator), the
// Gray-Scott runs A_first (linear system first).
enum class OperatorOrdering { A_first, B_first };

enum class GsNonlinearFlow { exact, midpoint };

// Number of steps tiling t_final, or throws when dt does not divide it
// (1e-9 relative tolerance, then rounded).
inline long steps_for(double dt, double t_final) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (!(t_final > 0.0))
    throw std::invalid_argument("integrate: t_final must be > 0");
  const double raw = t_final / dt;
  const long steps = std::lround(raw);
  if (steps < 1 || std::abs(raw - steps) > 1e-9 * std::max(1.0, raw))
    throw std::invalid_argument(
        "integrate: dt = " + std::to_string(dt) +
        " does not tile t_final = " + std::to_string(t_final));
  return steps;
}

// One composition step from direct flow calls. Flows have the signature
// State(const State&, cplx tau). The imaginary part is discarded after the
// full step unless project = false.
template <class State, class FlowA, class FlowB>
State step(const Scheme& scheme, OperatorOrdering ordering, FlowA&& flow_a,
           FlowB&& flow_b, State state, double dt, bool project = true) {
  for (std::size_t j = 0; j < scheme.stages.size(); ++j) {
    const Stage& st = scheme.stages[j];
    try {
      const cplx ta = st.a * dt, tb = st.b * dt;
      if (ordering == OperatorOrdering::A_first) {
        if (st.a != cplx(0.0)) state = flow_a(state, ta);
        if (st.b != cplx(0.0)) state = flow_b(state, tb);
      } else {
        if (st.a != cplx(0.0)) state = flow_b(state, ta);
        if (st.b != cplx(0.0)) state = flow_a(state, tb);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("step: scheme " + scheme.name + " stage " +
                               std::to_string(j) + ": " + e.what());
    }
  }
  if (project) project_real(state);
  return state;
}

// ---- cached steppers ----------------------------------------------------
// Stage multipliers depend only on (scheme, dt, problem), so they are built
// once and reused across all steps of an integration.

class LinearPotentialStepper {
 public:
  LinearPotentialStepper(const Scheme& scheme, OperatorOrdering ordering,
                         const Field& potential, double D, double dt)
      : plan_(fft::plan_for(static_cast<std::size_t>(potential.n()))) {
    for (const Stage& st : scheme.stages) {
      const cplx ta = st.a * dt, tb = st.b * dt;
      if (ordering == OperatorOrdering::A_first) {
        push_heat(*potential.grid, D, st.a, ta);
        push_potential(potential, st.b, tb);
      } else {
        push_potential(potential, st.a, ta);
        push_heat(*potential.grid, D, st.b, tb);
      }
    }
  }

  // one full composition step, real projection included
  void advance(Field& u) const {
    cplx* data = u.values.data();
    const std::size_t n = u.values.size();
    const auto& ops = kernels::active_ops();
    for (const MulOp& op : ops_) {
      if (op.spectral) {
        plan_.forward(data);
        ops.cmul(data, data, op.mult.data(), n);
        plan_.inverse(data);
      } else {
        ops.cmul(data, data, op.mult.data(), n);
      }
    }
    project_real(u);
  }

 private:
  struct MulOp {
    bool spectral;
    std::vector<cplx> mult;
  };

  void push_heat(const Grid& g, double D, cplx coeff, cplx tau) {
    if (coeff == cplx(0.0)) return;
    ops_.push_back({true, heat_multiplier(g, D, tau)});
  }
  void push_potential(const Field& pot, cplx coeff, cplx tau) {
    if (coeff == cplx(0.0)) return;
    ops_.push_back({false, potential_multiplier(pot, tau)});
  }

  const fft::Plan& plan_;
  std::vector<MulOp> ops_;
};

class GrayScottStepper {
 public:
  GrayScottStepper(const Scheme& scheme, OperatorOrdering ordering,
                   const Grid& grid, const FlowParams& params,
                   GsNonlinearFlow nl, double dt)
      : params_(params),
        nl_(nl),
        plan_(fft::plan_for(static_cast<std::size_t>(grid.n))) {
    for (const Stage& st : scheme.stages) {
      const cplx ta = st.a * dt, tb = st.b * dt;
      if (ordering == OperatorOrdering::A_first) {
        push_linear(grid, st.a, ta);
        push_nonlinear(st.b, tb);
      } else {
        push_nonlinear(st.a, ta);
        push_linear(grid, st.b, tb);
      }
    }
  }

  void advance(GSState& s) const {
    const auto& ops = kernels::active_ops();
    const std::size_t n = s.u.values.size();
    for (const StageOp& op : ops_) {
      if (op.linear) {
        cplx* ud = s.u.values.data();
        cplx* vd = s.v.values.data();
        plan_.forward(ud);
        ops.cmul(ud, ud, op.tables.u_decay.data(), n);
        ud[0] += op.tables.u_fixed0 * (1.0 - op.tables.u_decay[0]);
        plan_.inverse(ud);
        plan_.forward(vd);
        ops.cmul(vd, vd, op.tables.v_decay.data(), n);
        plan_.inverse(vd);
      } else {
        s = nl_ == GsNonlinearFlow::exact
                ? gs_nonlinear_flow_exact(s, op.tau)
                : gs_nonlinear_flow_midpoint(s, op.tau);
      }
    }
    project_real(s);
  }

 private:
  struct StageOp {
    bool linear;
    GsLinearTables tables;
    cplx tau;
  };

  void push_linear(const Grid& g, cplx coeff, cplx tau) {
    if (coeff == cplx(0.0)) return;
    ops_.push_back({true, gs_linear_tables(g, params_, tau), tau});
  }
  void push_nonlinear(cplx coeff, cplx tau) {
    if (coeff == cplx(0.0)) return;
    ops_.push_back({false, {}, tau});
  }

  FlowParams params_;
  GsNonlinearFlow nl_;
  const fft::Plan& plan_;
  std::vector<StageOp> ops_;
};

}  // namespace rdsplit

#endif
