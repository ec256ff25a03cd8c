#ifndef RDSPLIT_SCHEMES_HPP
#define RDSPLIT_SCHEMES_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace rdsplit {

using cplx = std::complex<double>;

// Stage j applies flow-A for a*dt, then flow-B for b*dt (roles swap under
// B_first ordering). Zero coefficients are skipped when stepping.
struct Stage {
  cplx a, b;
};

struct Scheme {
  std::vector<Stage> stages;
  int nominal_order = 0;
  std::string name;
  std::string source;  // "constructed" or the file it was loaded from

  cplx sum_a() const;
  cplx sum_b() const;
};

struct SchemeCheck {
  bool ok = true;
  std::vector<std::string> issues;
};

// Consistency sums == 1 (1e-12) and Re >= 0 on every nonzero coefficient.
SchemeCheck validate(const Scheme& s);

// max |arg| over all nonzero stage coefficients
double max_stage_arg(const Scheme& s);

Scheme lie_trotter();  // single stage (1, 1), order 1
Scheme strang();       // flattened [(1/2, 1), (1/2, 0)], order 2

// 3-fold composition gamma1, gamma2, gamma1 with
// omega = 2^{1/(p+1)} exp(i pi (2k+1)/(p+1)), gamma1 = 1/(2+omega),
// gamma2 = omega*gamma1; raises even order p to p+2. Adjacent pure-A stages
// are merged. root_index k in [0, p].
Scheme triple_jump(const Scheme& base, int root_index,
                   bool require_admissible = true);

// order in {2,4,6,8}: 2 = strang, higher by recursive triple jump with the
// root at each level chosen (exhaustively, deterministically) to minimize
// the maximum stage-coefficient |arg| subject to Re >= 0 everywhere.
Scheme build_order(int order);

// Plain-text stage files: header `order N name TEXT`, then per stage four
// full-precision decimals `Re(a) Im(a) Re(b) Im(b)`; `#` starts a comment.
Scheme load_scheme(const std::filesystem::path& path,
                   bool allow_invalid = false);
void save_scheme(const Scheme& s, const std::filesystem::path& path);

}  // namespace rdsplit

#endif
