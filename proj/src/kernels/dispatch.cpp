#include <cstdlib>

#include "xc/kernels.hpp"

namespace xc::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, scalar::count_violations,
                              scalar::accept_weights, scalar::matmul,
                              scalar::multiplicative_update};

#if XC_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{Isa::avx2, avx2::count_violations,
                            avx2::accept_weights, avx2::matmul,
                            avx2::multiplicative_update};
#endif

}  // namespace

bool avx2_available() {
#if XC_HAVE_AVX2_KERNELS
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

const KernelTable& kernel_table(Isa isa) {
#if XC_HAVE_AVX2_KERNELS
  if (isa == Isa::avx2 && avx2_available()) return kAvx2;
#else
  (void)isa;
#endif
  return kScalar;
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    if (std::getenv("XC_FORCE_SCALAR") != nullptr) return kScalar;
    return kernel_table(Isa::avx2);
  }();
  return table;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

}  // namespace xc::kernels
