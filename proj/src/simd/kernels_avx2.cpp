// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "rtl/kernels.hpp"

namespace rtl::simd {
namespace {

// a <= b (unsigned) per lane, as an all-ones mask.
inline __m256i le_epu32(__m256i a, __m256i b) { return _mm256_cmpeq_epi32(_mm256_max_epu32(a, b), b); }

bool leq_all_avx2(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
        if (_mm256_movemask_epi8(le_epu32(va, vb)) != -1) return false;
    }
    for (; k < n; ++k) {
        if (a[k] > b[k]) return false;
    }
    return true;
}

std::size_t first_dominated_avx2(const std::uint32_t* columns, std::size_t stride, std::size_t rows,
                                 std::size_t width, const std::uint32_t* probe, Dominance mode) {
    std::size_t k = 0;
    for (; k + 8 <= rows; k += 8) {
        __m256i hit = _mm256_set1_epi32(-1);
        for (std::size_t j = 0; j < width; ++j) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(columns + j * stride + k));
            const __m256i p = _mm256_set1_epi32(static_cast<int>(probe[j]));
            hit = _mm256_and_si256(hit, mode == Dominance::RowLeqProbe ? le_epu32(v, p) : le_epu32(p, v));
            if (_mm256_testz_si256(hit, hit)) break;
        }
        const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(hit));
        if (mask != 0) return k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
    }
    for (; k < rows; ++k) {
        bool ok = true;
        for (std::size_t j = 0; j < width && ok; ++j) {
            const std::uint32_t v = columns[j * stride + k];
            ok = mode == Dominance::RowLeqProbe ? v <= probe[j] : probe[j] <= v;
        }
        if (ok) return k;
    }
    return npos;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{"avx2", leq_all_avx2, first_dominated_avx2};

}  // namespace rtl::simd
