#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rtl/colouring.hpp"

namespace rtl {

struct SearchConfig {
    Nat cap = 64;                            // largest R tried
    std::uint64_t node_budget = 200'000'000;  // candidate assignments, summed over the R scan
    unsigned parallel_width = 1;
};

enum class SearchStatus { exact, cap_reached, budget_exhausted };

std::string_view to_string(SearchStatus s) noexcept;
SearchStatus parse_status(std::string_view text);

struct SearchOutcome {
    std::optional<Nat> value;
    std::optional<Certificate> lower_certificate;  // bad colouring at value - 1 (or at cap)
    std::uint64_t nodes_explored = 0;
    SearchStatus status = SearchStatus::cap_reached;
};

struct BadColouringResult {
    std::optional<Certificate> certificate;
    bool exhausted = false;
    std::uint64_t nodes = 0;
};

/// First bad colouring at R in canonical order: tuples ranked by (max coordinate,
/// lexicographic), values tried ascending. Absent when none exists; `exhausted`
/// marks an inconclusive run.
BadColouringResult find_bad_colouring(const Params& p, Nat R, const SearchConfig& cfg);

/// Least R <= cap admitting no bad colouring.
SearchOutcome ramsey_number(const Params& p, const SearchConfig& cfg);

SearchOutcome ar_number(unsigned d, Nat r, const ParamFunction& f, const SearchConfig& cfg);
SearchOutcome ph_number(unsigned d, Nat m, Nat r, const ParamFunction& f, const SearchConfig& cfg);
SearchOutcome km_number(unsigned d, Nat a, Nat m, const ParamFunction& f, const SearchConfig& cfg);

}  // namespace rtl
