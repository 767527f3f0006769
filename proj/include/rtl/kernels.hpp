#pragma once

// Componentwise-dominance kernels over unsigned 32-bit colour values.
//
// Every kernel has a portable scalar reference; an AVX2 variant is compiled
// when the toolchain supports it and selected at runtime when the CPU does.
// Setting RTL_FORCE_SCALAR=1 in the environment pins the scalar table.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rtl::simd {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

enum class Dominance {
    RowLeqProbe,  // row[k] <= probe[k] for all k
    ProbeLeqRow,  // probe[k] <= row[k] for all k
};

struct KernelTable {
    const char* name;

    // a[k] <= b[k] for every k < n.
    bool (*leq_all)(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);

    // Rows are stored column-major: coordinate j of row k sits at columns[j * stride + k].
    // Returns the index of the first row in [0, rows) that satisfies `mode`
    // against `probe`, or npos.
    std::size_t (*first_dominated)(const std::uint32_t* columns, std::size_t stride, std::size_t rows,
                                   std::size_t width, const std::uint32_t* probe, Dominance mode);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant was not built or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// The table chosen for this process.
const KernelTable& active_kernels() noexcept;

inline bool leq_all(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) noexcept {
    return active_kernels().leq_all(a.data(), b.data(), a.size());
}

/// Column-major block of rows sharing one width, filled row by row.
class ColumnBlock {
public:
    void reset(std::size_t width, std::size_t capacity) {
        width_ = width;
        capacity_ = capacity;
        rows_ = 0;
        data_.assign(width * capacity, 0);
    }

    void push_row(std::span<const std::uint32_t> row) noexcept {
        for (std::size_t j = 0; j < width_; ++j) data_[j * capacity_ + rows_] = row[j];
        ++rows_;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t width() const noexcept { return width_; }

    std::size_t first_dominated(std::span<const std::uint32_t> probe, Dominance mode) const noexcept {
        return active_kernels().first_dominated(data_.data(), capacity_, rows_, width_, probe.data(), mode);
    }

private:
    std::vector<std::uint32_t> data_;
    std::size_t width_ = 0;
    std::size_t capacity_ = 0;
    std::size_t rows_ = 0;
};

}  // namespace rtl::simd
