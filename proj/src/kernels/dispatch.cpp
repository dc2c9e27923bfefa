#include <cstdlib>
#include <string_view>

#include "apbounds/kernels.hpp"

namespace apb::kernels {

#if defined(APB_HAVE_AVX2_KERNELS)
const Table& avx2_table();
#endif

const Table* avx2() {
#if defined(APB_HAVE_AVX2_KERNELS)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table& t = [] () -> const Table& {
    const char* env = std::getenv("APBOUNDS_KERNELS");
    if (env && std::string_view(env) == "scalar") return scalar();
    if (const Table* v = avx2()) return *v;
    return scalar();
  }();
  return t;
}

}  // namespace apb::kernels
