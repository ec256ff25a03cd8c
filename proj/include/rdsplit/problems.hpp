#ifndef RDSPLIT_PROBLEMS_HPP
#define RDSPLIT_PROBLEMS_HPP

#include <string>
#include <vector>

#include "rdsplit/stepping.hpp"

namespace rdsplit {

enum class ProblemKind { linear_potential, gray_scott };

// A named pairing of flows, parameters, mesh, initial data and operator
// ordering.
struct Problem {
  std::string name;
  ProblemKind kind = ProblemKind::linear_potential;
  FlowParams params;
  GridPtr grid;
  OperatorOrdering ordering = OperatorOrdering::B_first;
  GsNonlinearFlow nonlinear_flow = GsNonlinearFlow::exact;

  double (*initial_u)(double) = nullptr;
  double (*initial_v)(double) = nullptr;  // Gray-Scott only

  double default_dt = 0.0;       // 0 when the preset does not fix one
  double default_t_final = 0.0;  // 0 when the paper leaves it open
  double reference_dt = 0.0;     // full-accuracy reference step

  Field initial_u_field() const;
  GSState initial_state() const;  // Gray-Scott
};

// Registered presets: linpot-high, linpot-low, gs-high, gs-low, gs-selfrep,
// gs-chaos. Throws std::invalid_argument listing the names otherwise.
Problem preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace rdsplit

#endif
