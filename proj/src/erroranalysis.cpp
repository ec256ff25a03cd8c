#include "rdsplit/erroranalysis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "rdsplit/subflows.hpp"

namespace rdsplit {
namespace {

Field pointwise(const Field& a, const Field& b) {
  Field out = a;
  for (std::size_t j = 0; j < out.values.size(); ++j)
    out.values[j] *= b.values[j];
  return out;
}

Field scaled(const Field& a, double s) {
  Field out = a;
  for (cplx& v : out.values) v *= s;
  return out;
}

Field lincomb(std::initializer_list<std::pair<double, const Field*>> terms) {
  Field out = *terms.begin()->second;
  for (cplx& v : out.values) v = 0.0;
  for (const auto& [c, f] : terms)
    for (std::size_t j = 0; j < out.values.size(); ++j)
      out.values[j] += c * f->values[j];
  return out;
}

// Pade-13 scaling and squaring (Higham 2005).
Eigen::MatrixXd expm(const Eigen::MatrixXd& M) {
  static const double b[] = {64764752532480000.0,
                             32382376266240000.0,
                             7771770303897600.0,
                             1187353796428800.0,
                             129060195264000.0,
                             10559470521600.0,
                             670442572800.0,
                             33522128640.0,
                             1323241920.0,
                             40840800.0,
                             960960.0,
                             16380.0,
                             182.0,
                             1.0};
  const double theta13 = 5.371920351148152;
  const double n1 = M.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (n1 > theta13) s = static_cast<int>(std::ceil(std::log2(n1 / theta13)));
  const Eigen::MatrixXd A = M / std::pow(2.0, s);
  const Eigen::MatrixXd I =
      Eigen::MatrixXd::Identity(M.rows(), M.cols());
  const Eigen::MatrixXd A2 = A * A;
  const Eigen::MatrixXd A4 = A2 * A2;
  const Eigen::MatrixXd A6 = A2 * A4;
  const Eigen::MatrixXd U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
           b[5] * A4 + b[3] * A2 + b[1] * I);
  const Eigen::MatrixXd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                            b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Eigen::MatrixXd R = (V - U).lu().solve(V + U);
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

}  // namespace

std::vector<ErrorTermReport> strang_error_terms(const Field& u, double D,
                                                const Field& potential) {
  if (max_imag(u) != 0.0)
    throw std::invalid_argument("strang_error_terms: u must be real-valued");
  if (!same_grid(u, potential))
    throw std::invalid_argument("strang_error_terms: grid mismatch");

  const Field& f = potential;
  const Field fu = pointwise(f, u);
  const Field f2u = pointwise(f, fu);
  const Field u_xx = spectral_derivative(u, 2);
  const Field u_xxxx = spectral_derivative(u, 4);

  auto sup = [](const Field& g) { return max_abs(g); };

  std::vector<ErrorTermReport> rows;
  rows.push_back({"D f [f u]_xx",
                  D * sup(pointwise(f, spectral_derivative(fu, 2))), D});
  rows.push_back({"D^2 f u_xxxx / 2",
                  D * D / 2.0 * sup(pointwise(f, u_xxxx)), D});
  rows.push_back({"D f^2 u_xx / 2",
                  D / 2.0 * sup(pointwise(f, pointwise(f, u_xx))), D});
  rows.push_back({"D [f^2 u]_xx / 2",
                  D / 2.0 * sup(spectral_derivative(f2u, 2)), D});
  rows.push_back({"D^2 [f u]_xxxx / 2",
                  D * D / 2.0 * sup(spectral_derivative(fu, 4)), D});
  rows.push_back({"D^2 [f u_xx]_xx",
                  D * D * sup(spectral_derivative(pointwise(f, u_xx), 2)),
                  D});
  return rows;
}

DefectReport strang_one_step_defect(const Field& u, double D,
                                    const Field& potential, double dt) {
  const int n = u.grid->n;
  if (n > 256)
    throw std::invalid_argument(
        "strang_one_step_defect: dense oracle refuses n > 256");
  if (!same_grid(u, potential))
    throw std::invalid_argument("strang_one_step_defect: grid mismatch");

  // splitting route: potential halves outside, heat inside
  Field split = potential_flow(u, potential, dt / 2.0);
  split = heat_flow(split, D, dt);
  split = potential_flow(split, potential, dt / 2.0);

  // dense route: columns of the spectral d_xx matrix from unit impulses
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j) {
    Field e = make_field(u.grid);
    e.values[j] = 1.0;
    const Field col = spectral_derivative(e, 2);
    for (int i = 0; i < n; ++i) M(i, j) = D * col.values[i].real();
  }
  for (int j = 0; j < n; ++j) M(j, j) += potential.values[j].real();

  const Eigen::MatrixXd E = expm(M * dt);
  Eigen::VectorXd u0(n);
  for (int j = 0; j < n; ++j) u0[j] = u.values[j].real();
  const Eigen::VectorXd exact = E * u0;

  double defect = 0.0;
  for (int j = 0; j < n; ++j)
    defect = std::max(defect, std::abs(split.values[j] - cplx(exact[j])));

  // leading bracket: (BAA + AAB)/12 + BAB/12 - (BBA + ABB)/24 - ABA/6
  const Field& f = potential;
  const Field fu = pointwise(f, u);
  const Field u_xx = spectral_derivative(u, 2);
  const Field BABu = scaled(pointwise(f, spectral_derivative(fu, 2)), D);
  const Field BAAu = scaled(pointwise(f, spectral_derivative(u, 4)), D * D);
  const Field BBAu = scaled(pointwise(f, pointwise(f, u_xx)), D);
  const Field ABBu = scaled(spectral_derivative(pointwise(f, fu), 2), D);
  const Field AABu = scaled(spectral_derivative(fu, 4), D * D);
  const Field ABAu =
      scaled(spectral_derivative(pointwise(f, u_xx), 2), D * D);
  const Field Cu = lincomb({{1.0 / 12, &BAAu},
                            {1.0 / 12, &AABu},
                            {1.0 / 12, &BABu},
                            {-1.0 / 24, &BBAu},
                            {-1.0 / 24, &ABBu},
                            {-1.0 / 6, &ABAu}});

  return {defect, dt * dt * dt * max_abs(Cu)};
}

}  // namespace rdsplit
