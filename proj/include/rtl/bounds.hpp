#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rtl/funclib.hpp"
#include "rtl/ordinal.hpp"
#include "rtl/search.hpp"

namespace rtl {

/// 2_d(k^{r+1}).
BigNat ar_upper_bound(Nat d, Nat k, Nat r);
/// 2_{d-1}(r^{d^2} k) + m. Throws GuardViolation unless k >= r + m and d >= 1.
BigNat ph_upper_bound(Nat d, Nat k, Nat m, Nat r);
/// 2_{d-2}(k^{d^2 m}) + a. Throws GuardViolation unless k >= a + d^2 m + 2 and d >= 2.
BigNat km_upper_bound(Nat d, Nat k, Nat a, Nat m);

struct BoundValue {
    BigNat value;
    bool guarded = false;  // parameters satisfy the formula's stated guard
};

/// Same formulas without the k guards (d must still be large enough for the tower height).
BoundValue ph_upper_bound_unguarded(Nat d, Nat k, Nat m, Nat r);
BoundValue km_upper_bound_unguarded(Nat d, Nat k, Nat a, Nat m);

enum class ThresholdVariant { ar_root, ph_div, diag_log };

std::string_view to_string(ThresholdVariant v) noexcept;
ThresholdVariant parse_threshold_variant(std::string_view text);

/// ar_root: c-th root of log^d(i) with c = max(1, H_a^{-1}(i));
/// ph_div: log^{d+1}(i) / H_a^{-1}(i); diag_log: log^{H_a^{-1}(i)}(i).
Nat threshold_f_alpha(ThresholdVariant v, Nat d, const Ordinal& alpha, Nat i, std::uint64_t budget);

/// (c, i) -> l_c(i), nondecreasing in both arguments. Indices below min_index
/// are raised to it, so families such as i * c stay unbounded in i.
class IndexedFamily {
public:
    using Eval = std::function<Nat(Nat, Nat)>;

    IndexedFamily(std::string name, Eval eval, Nat min_index = 0);

    Nat operator()(Nat c, Nat i) const { return eval_(std::max(c, min_index_), i); }
    const std::string& name() const noexcept { return name_; }
    Nat min_index() const noexcept { return min_index_; }

    /// The member l_c as a parameter function.
    ParamFunction member(Nat c) const;

    static IndexedFamily mul();               // i * c, c >= 1
    static IndexedFamily tower_pow(Nat d);    // 2_d(i^c), saturating
    static IndexedFamily tower_lin(Nat d);    // 2_d(i * c), saturating
    static IndexedFamily identity();          // i

private:
    std::string name_;
    Eval eval_;
    Nat min_index_;
};

/// Samples l on [0, c_hi] x [0, i_hi].
bool check_monotone(const IndexedFamily& l, Nat c_hi, Nat i_hi);

/// With c = H^{-1}(i): the least j with l_c(j) >= i.
Nat sharpening_compose(const IndexedFamily& l, const ParamFunction& H, Nat i, Nat scan_cap = kDefaultScanCap);

/// i -> sharpening_compose(l, H, i), named "sharpen(<l>,<H>)".
ParamFunction sharpened(const IndexedFamily& l, const ParamFunction& H, Nat scan_cap = kDefaultScanCap);

/// l_c^{-1}, named "inv:<l>@c".
ParamFunction family_inverse(const IndexedFamily& l, Nat c, Nat scan_cap = kDefaultScanCap);

/// u^{-1}, named "inv:<u>".
ParamFunction inverse_function(const ParamFunction& u, Nat scan_cap = kDefaultScanCap);

/// Values M_f(args...) keyed by the tag (name) of f, plus the functions behind the tags.
class TabulatedM {
public:
    using Args = std::vector<Nat>;

    void set(const std::string& tag, const Args& args, Nat value);
    bool has(const std::string& tag, const Args& args) const;
    /// Throws MissingEntry.
    Nat at(const std::string& tag, const Args& args) const;

    void register_function(const ParamFunction& f);
    /// Throws MissingEntry.
    const ParamFunction& function(const std::string& tag) const;
    const std::map<std::string, ParamFunction>& functions() const noexcept { return functions_; }
    const std::map<std::pair<std::string, Args>, Nat>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

private:
    std::map<std::pair<std::string, Args>, Nat> entries_;
    std::map<std::string, ParamFunction> functions_;
};

struct ProbeViolation {
    std::string where;
    std::string detail;
};

struct ProbeReport {
    std::uint64_t checks = 0;
    std::vector<ProbeViolation> violations;
};

using UpperGrid = std::map<std::pair<Nat, Nat>, Nat>;  // (d, x) -> h(d, x)

/// For every (d, x) -> h in `h`: M_{u^{-1}}(d,x) <= M_{h}(d,x) <= u(h), where
/// M_h is the entry of the constant function h. Also, for every pair of
/// registered f, g and every grid point: f <= g on [0, M_g(d,x)] implies
/// M_f(d,x) <= M_g(d,x).
ProbeReport probe_upper_bounds_lemma(const TabulatedM& M, const ParamFunction& u, const UpperGrid& h);

/// For each x >= 1 in xs, with h = sharpened(l, H): if M_h(x,x,x) < H(x) then
/// h(i) >= l_x^{-1}(i) for i <= M_h(x,x,x) and M_h(x,x,x) >= M_{l_x^{-1}}(x,x,x).
/// x = 0 is skipped.
ProbeReport probe_proof_sharpening(const TabulatedM& M, const IndexedFamily& l, const ParamFunction& H,
                                   const std::vector<Nat>& xs, Nat scan_cap = kDefaultScanCap);

/// M_f(d, x) = f(x) + d + x for the given functions.
TabulatedM toy_upper_grid(const std::vector<ParamFunction>& fs, const UpperGrid& points);

/// M_f(n, c, x) = f(x) + n + c at (x, x, x), for h = sharpened(l, H) and l_x^{-1}.
TabulatedM toy_sharpening_grid(const IndexedFamily& l, const ParamFunction& H, const std::vector<Nat>& xs,
                               Nat scan_cap = kDefaultScanCap);

/// The function i -> f(i) + x, named "<f>+x".
ParamFunction offset_function(const ParamFunction& f, Nat x);

/// M_f(d, x) = AR^d_{f + x}(1), filled by search for each f and grid point.
/// Throws BudgetExceeded when a value is not found exactly.
TabulatedM ar_upper_grid(const std::vector<ParamFunction>& fs, const UpperGrid& points, const SearchConfig& cfg);

/// M_f(n, c, x) = AR^1_{f + x}(1) at (x, x, x), for h = sharpened(l, H) and l_x^{-1}.
TabulatedM ar_sharpening_grid(const IndexedFamily& l, const ParamFunction& H, const std::vector<Nat>& xs,
                              const SearchConfig& cfg, Nat scan_cap = kDefaultScanCap);

}  // namespace rtl
