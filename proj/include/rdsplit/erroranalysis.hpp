#ifndef RDSPLIT_ERRORANALYSIS_HPP
#define RDSPLIT_ERRORANALYSIS_HPP

#include <string>
#include <vector>

#include "rdsplit/spectral.hpp"

namespace rdsplit {

struct ErrorTermReport {
  std::string term_label;
  double magnitude = 0.0;  // discrete sup norm
  double D = 0.0;
};

// The six third-order error expressions of the Strang split between
// D*u_xx and f(x)*u, evaluated exactly as tabulated (sup norm over the
// grid). u must be real-valued.
std::vector<ErrorTermReport> strang_error_terms(const Field& u, double D,
                                                const Field& potential);

struct DefectReport {
  double defect_norm = 0.0;       // ||Strang(dt)u - exp((A+B)dt)u||_inf
  double predicted_leading = 0.0; // dt^3 * ||leading bracket applied to u||_inf
};

// Cross-validation of the splitting path against dense scaling-and-squaring
// matrix exponentiation of A + B (A = D * spectral d_xx matrix,
// B = diag(potential)). Refuses n > 256. The leading-term bracket is the
// symmetric-BCH third-order coefficient of exp(B dt/2) exp(A dt) exp(B dt/2):
//   (BAA + AAB)/12 + BAB/12 - (BBA + ABB)/24 - ABA/6.
DefectReport strang_one_step_defect(const Field& u, double D,
                                    const Field& potential, double dt);

}  // namespace rdsplit

#endif
