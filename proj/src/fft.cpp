#include "rdsplit/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "rdsplit/kernels.hpp"

namespace rdsplit::fft {

bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

Plan::Plan(std::size_t n) : n_(n) {
  if (!is_pow2(n) || n < 2)
    throw std::invalid_argument("fft: size must be a power of two >= 2");

  bitrev_.resize(n);
  std::uint32_t j = 0;
  bitrev_[0] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= static_cast<std::uint32_t>(bit);
    j ^= static_cast<std::uint32_t>(bit);
    bitrev_[i] = j;
  }

  tw_fwd_.reserve(n - 1);
  tw_inv_.reserve(n - 1);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // k/len is exact for power-of-two len
      const double theta =
          2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(len));
      const double c = std::cos(theta), s = std::sin(theta);
      tw_fwd_.emplace_back(c, -s);
      tw_inv_.emplace_back(c, s);
    }
  }
}

void Plan::run(cplx* data, const std::vector<cplx>& tw) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t r = bitrev_[i];
    if (i < r) std::swap(data[i], data[r]);
  }
  const auto& ops = kernels::active_ops();
  std::size_t off = 0;
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    ops.fft_pass(data, n_, len, tw.data() + off);
    off += len / 2;
  }
}

void Plan::forward(cplx* data) const { run(data, tw_fwd_); }

void Plan::inverse(cplx* data) const {
  run(data, tw_inv_);
  const cplx s(1.0 / static_cast<double>(n_), 0.0);
  kernels::active_ops().cscale(data, data, s, n_);
}

const Plan& plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<Plan>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plan>(n);
  return *slot;
}

}  // namespace rdsplit::fft
