#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "mln/simd.hpp"

namespace mln::simd {

namespace {

constexpr KernelTable kScalar{Backend::scalar,
                              detail::dot_scalar,
                              detail::sum_squares_scalar,
                              detail::squared_distance_scalar,
                              detail::axpy_scalar,
                              detail::scaled_copy_scalar};

#if defined(MLN_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::avx2,
                            detail::dot_avx2,
                            detail::sum_squares_avx2,
                            detail::squared_distance_avx2,
                            detail::axpy_avx2,
                            detail::scaled_copy_avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(MLN_HAVE_NEON)
constexpr KernelTable kNeon{Backend::neon,
                            detail::dot_neon,
                            detail::sum_squares_neon,
                            detail::squared_distance_neon,
                            detail::axpy_neon,
                            detail::scaled_copy_neon};
#endif

const KernelTable& select() {
  if (const char* forced = std::getenv("MLN_SIMD"); forced && std::string_view(forced) == "scalar") {
    return kScalar;
  }
  if (const KernelTable* t = kernels_for(Backend::avx2)) return *t;
  if (const KernelTable* t = kernels_for(Backend::neon)) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* kernels_for(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return &kScalar;
    case Backend::avx2:
#if defined(MLN_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2;
#endif
      return nullptr;
    case Backend::neon:
#if defined(MLN_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

}  // namespace mln::simd
