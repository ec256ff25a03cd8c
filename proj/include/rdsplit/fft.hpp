#ifndef RDSPLIT_FFT_HPP
#define RDSPLIT_FFT_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rdsplit::fft {

using cplx = std::complex<double>;

// Iterative radix-2 transform for power-of-two sizes. Forward is
// unnormalized, inverse carries the 1/n factor. In-place, complex to complex.
class Plan {
 public:
  explicit Plan(std::size_t n);

  void forward(cplx* data) const;
  void inverse(cplx* data) const;
  std::size_t size() const { return n_; }

 private:
  void run(cplx* data, const std::vector<cplx>& tw) const;

  std::size_t n_;
  std::vector<std::uint32_t> bitrev_;
  // Twiddles for all stages packed end to end: stage len=2 first (1 entry),
  // then len=4 (2 entries), ..., len=n (n/2 entries).
  std::vector<cplx> tw_fwd_, tw_inv_;
};

// Shared per-size plan cache (thread-safe).
const Plan& plan_for(std::size_t n);

bool is_pow2(std::size_t n);

}  // namespace rdsplit::fft

#endif
