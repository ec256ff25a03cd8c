#include "rdsplit/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace rdsplit::kernels {

// defined in kernels_avx2.cpp; nullptr when that TU was built without AVX2
const Ops* avx2_ops_impl();

const Ops* avx2_ops() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return avx2_ops_impl();
#endif
  return nullptr;
}

const Ops& active_ops() {
  static const Ops* selected = [] {
    const Ops* vec = avx2_ops();
    if (const char* env = std::getenv("RDSPLIT_KERNELS")) {
      const std::string_view want(env);
      if (want == "scalar") return &scalar_ops();
      if (want == "avx2") {
        if (vec) return vec;
        std::fprintf(stderr,
                     "rdsplit: RDSPLIT_KERNELS=avx2 requested but AVX2 is "
                     "unavailable; using scalar kernels\n");
        return &scalar_ops();
      }
      std::fprintf(stderr, "rdsplit: unknown RDSPLIT_KERNELS value '%s'\n",
                   env);
    }
    return vec ? vec : &scalar_ops();
  }();
  return *selected;
}

}  // namespace rdsplit::kernels
