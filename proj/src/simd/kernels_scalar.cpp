#include "rtl/kernels.hpp"

namespace rtl::simd {
namespace {

bool leq_all_scalar(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k] > b[k]) return false;
    }
    return true;
}

std::size_t first_dominated_scalar(const std::uint32_t* columns, std::size_t stride, std::size_t rows,
                                   std::size_t width, const std::uint32_t* probe, Dominance mode) {
    for (std::size_t k = 0; k < rows; ++k) {
        bool hit = true;
        for (std::size_t j = 0; j < width && hit; ++j) {
            const std::uint32_t v = columns[j * stride + k];
            hit = mode == Dominance::RowLeqProbe ? v <= probe[j] : probe[j] <= v;
        }
        if (hit) return k;
    }
    return npos;
}

constexpr KernelTable kScalar{"scalar", leq_all_scalar, first_dominated_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace rtl::simd
