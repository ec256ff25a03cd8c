#include "rdsplit/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rdsplit/fft.hpp"
#include "rdsplit/kernels.hpp"

namespace rdsplit {

GridPtr make_grid(int n, double x_min, double x_max) {
  if (n < 2 || !fft::is_pow2(static_cast<std::size_t>(n)))
    throw std::invalid_argument("make_grid: n must be a power of two >= 2");
  if (!(x_max > x_min))
    throw std::invalid_argument("make_grid: degenerate interval");

  auto g = std::make_shared<Grid>();
  g->n = n;
  g->x_min = x_min;
  g->x_max = x_max;
  const double L = x_max - x_min;
  g->dx = L / n;
  g->nodes.resize(n);
  g->wavenumbers.resize(n);
  for (int m = 0; m < n; ++m) {
    g->nodes[m] = x_min + m * g->dx;
    const int signed_idx = (m < n / 2) ? m : m - n;
    g->wavenumbers[m] = 2.0 * std::numbers::pi * signed_idx / L;
  }
  return g;
}

Field make_field(GridPtr grid) {
  Field f;
  f.values.assign(grid->n, cplx(0.0, 0.0));
  f.grid = std::move(grid);
  return f;
}

Field sample(GridPtr grid, double (*fn)(double)) {
  Field f = make_field(grid);
  for (int j = 0; j < grid->n; ++j) f.values[j] = fn(grid->nodes[j]);
  return f;
}

bool same_grid(const Field& a, const Field& b) {
  if (a.grid == b.grid) return true;
  if (!a.grid || !b.grid) return false;
  return a.grid->n == b.grid->n && a.grid->x_min == b.grid->x_min &&
         a.grid->x_max == b.grid->x_max;
}

std::vector<cplx> dft_forward(const Field& f) {
  if (!f.grid || static_cast<int>(f.values.size()) != f.grid->n)
    throw std::invalid_argument("dft_forward: field/grid size mismatch");
  std::vector<cplx> spec(f.values);
  fft::plan_for(spec.size()).forward(spec.data());
  return spec;
}

Field dft_inverse(std::span<const cplx> spectrum, GridPtr grid) {
  if (!grid || static_cast<int>(spectrum.size()) != grid->n)
    throw std::invalid_argument("dft_inverse: spectrum/grid size mismatch");
  Field f;
  f.values.assign(spectrum.begin(), spectrum.end());
  f.grid = std::move(grid);
  fft::plan_for(f.values.size()).inverse(f.values.data());
  return f;
}

Field spectral_derivative(const Field& f, int order) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("spectral_derivative: order must be 1..4");
  auto spec = dft_forward(f);
  const int n = f.grid->n;
  std::vector<cplx> mult(n);
  for (int m = 0; m < n; ++m) {
    const cplx ik(0.0, f.grid->wavenumbers[m]);
    cplx p(1.0, 0.0);
    for (int q = 0; q < order; ++q) p *= ik;
    mult[m] = p;
  }
  if (order % 2 == 1) mult[n / 2] = 0.0;
  kernels::active_ops().cmul(spec.data(), spec.data(), mult.data(),
                             spec.size());
  return dft_inverse(spec, f.grid);
}

double max_abs(const Field& f) {
  return std::sqrt(
      kernels::active_ops().max_abs2(f.values.data(), f.values.size()));
}

double max_imag(const Field& f) {
  double m = 0.0;
  for (const cplx& v : f.values) m = std::max(m, std::abs(v.imag()));
  return m;
}

}  // namespace rdsplit
