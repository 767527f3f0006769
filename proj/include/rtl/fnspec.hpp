#pragma once

#include <cstdint>
#include <string_view>

#include "rtl/funclib.hpp"

namespace rtl {

inline constexpr std::uint64_t kDefaultHardyBudget = 10'000'000;

/// Parameter-function grammar:
///   const:k  id  halve  pow2  logstar  log:n  rootlog:n:c  div:n:c
///   falpha:<ar-root|ph-div|diag-log>:<d>:<ordinal literal>
/// The returned function's name is the canonical spelling of the input.
/// Throws InvalidArgument on malformed text.
ParamFunction parse_function(std::string_view text, std::uint64_t hardy_budget = kDefaultHardyBudget);

/// Strict decimal natural, no sign or spaces.
Nat parse_nat(std::string_view text);

}  // namespace rtl
