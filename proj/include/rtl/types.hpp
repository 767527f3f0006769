#pragma once

#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace rtl {

using Nat = std::uint64_t;
using BigNat = boost::multiprecision::cpp_int;

inline constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

constexpr Nat sat_add(Nat a, Nat b) noexcept { return a > kNatMax - b ? kNatMax : a + b; }

constexpr Nat sat_mul(Nat a, Nat b) noexcept {
    if (a == 0 || b == 0) return 0;
    return a > kNatMax / b ? kNatMax : a * b;
}

constexpr Nat sat_pow(Nat base, Nat exp) noexcept {
    Nat result = 1;
    while (exp > 0) {
        if (exp & 1) result = sat_mul(result, base);
        exp >>= 1;
        if (exp > 0) base = sat_mul(base, base);
    }
    return result;
}

}  // namespace rtl
