#include <cstdlib>
#include <cstring>

#include "rtl/kernels.hpp"

namespace rtl::simd {

#if defined(RTL_BUILD_AVX2)
extern const KernelTable kAvx2Table;
#endif

const KernelTable* avx2_kernels() noexcept {
#if defined(RTL_BUILD_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
    static const KernelTable& chosen = []() -> const KernelTable& {
        const char* force = std::getenv("RTL_FORCE_SCALAR");
        if (force != nullptr && std::strcmp(force, "0") != 0) return scalar_kernels();
        if (const KernelTable* t = avx2_kernels()) return *t;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace rtl::simd
