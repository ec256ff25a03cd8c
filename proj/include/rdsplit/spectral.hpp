#ifndef RDSPLIT_SPECTRAL_HPP
#define RDSPLIT_SPECTRAL_HPP

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace rdsplit {

using cplx = std::complex<double>;

// Uniform periodic mesh on [x_min, x_max); x_max itself is excluded.
// wavenumbers follow DFT bin order: k_m = 2*pi*m~/L with the signed index
// m~ = m for m < n/2, m - n otherwise.
struct Grid {
  int n = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;
  std::vector<double> nodes;
  std::vector<double> wavenumbers;

  double length() const { return x_max - x_min; }
};

using GridPtr = std::shared_ptr<const Grid>;

// n must be a power of two >= 2; throws std::invalid_argument otherwise.
GridPtr make_grid(int n, double x_min, double x_max);

// Complex nodal samples of one species on a Grid.
struct Field {
  std::vector<cplx> values;
  GridPtr grid;

  int n() const { return grid ? grid->n : 0; }
};

Field make_field(GridPtr grid);                       // zero-filled
Field sample(GridPtr grid, double (*fn)(double));     // real samples of fn(x)

// Same mesh (pointer identity or identical n/extent).
bool same_grid(const Field& a, const Field& b);

// Forward DFT, unnormalized: F[m] = sum_j f[j] exp(-2*pi*i*j*m/n).
std::vector<cplx> dft_forward(const Field& f);

// Inverse DFT with the 1/n factor; spectrum.size() must equal grid->n.
Field dft_inverse(std::span<const cplx> spectrum, GridPtr grid);

// Inverse transform of (i*k)^order * f^. order in {1,2,3,4}; the Nyquist bin
// is zeroed for odd orders (its derivative sign is ambiguous).
Field spectral_derivative(const Field& f, int order);

// Norms over nodal values.
double max_abs(const Field& f);
double max_imag(const Field& f);

}  // namespace rdsplit

#endif
