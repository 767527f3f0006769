#pragma once

#include <functional>
#include <string>

#include "rtl/types.hpp"

namespace rtl {

inline constexpr Nat kDefaultScanCap = Nat{1} << 20;
inline constexpr Nat kDefaultTowerBits = Nat{1} << 24;

/// A nondecreasing map from naturals to naturals, evaluated lazily.
///
/// The name doubles as the textual spec the function was built from (see
/// fnspec.hpp), so certificates and cached results can name their parameter
/// function reproducibly.
class ParamFunction {
public:
    using Eval = std::function<Nat(Nat)>;

    ParamFunction(std::string name, Eval eval, bool monotone_hint = true, bool unbounded_hint = true);

    Nat operator()(Nat i) const { return eval_(i); }

    const std::string& name() const noexcept { return name_; }
    bool monotone_hint() const noexcept { return monotone_hint_; }
    bool unbounded_hint() const noexcept { return unbounded_hint_; }

    static ParamFunction identity();
    static ParamFunction constant(Nat k);
    static ParamFunction halve();
    static ParamFunction power_of_two();
    static ParamFunction iter_log(Nat n);
    static ParamFunction root_log(Nat n, Nat c);
    static ParamFunction log_star();
    /// i -> log^n(i) / c, with x/0 = 1.
    static ParamFunction log_div(Nat n, Nat c);

private:
    std::string name_;
    Eval eval_;
    bool monotone_hint_;
    bool unbounded_hint_;
};

/// Samples f on [0, probe_hi] and reports whether it is nondecreasing there.
bool check_monotone(const ParamFunction& f, Nat probe_hi);

/// Reports whether f reaches `bound` at some argument <= scan_cap.
bool check_reaches(const ParamFunction& f, Nat bound, Nat scan_cap = kDefaultScanCap);

/// 2_n(i): n-fold iterated base-2 exponentiation. Throws ResourceError when an
/// intermediate exponent exceeds `max_bits`.
BigNat tower(Nat n, const BigNat& i, Nat max_bits = kDefaultTowerBits);
inline BigNat tower(Nat n, Nat i, Nat max_bits = kDefaultTowerBits) { return tower(n, BigNat(i), max_bits); }

/// 2_n(i) clamped to kNatMax.
Nat tower_saturating(Nat n, Nat i) noexcept;

/// Least j with 2^j >= i.
Nat ceil_log2(Nat i) noexcept;

/// Least j with j^c >= i (c >= 1).
Nat ceil_root(Nat i, Nat c);
BigNat ceil_root(const BigNat& i, Nat c);

/// Least j <= scan_cap with f(j) >= i. Throws NotAttained otherwise.
/// Uses galloping plus bisection, so f must be nondecreasing.
Nat pseudo_inverse(const ParamFunction& f, Nat i, Nat scan_cap = kDefaultScanCap);

/// log^n(i) = min{ j : 2_n(j) >= i }.
Nat iter_log(Nat n, Nat i) noexcept;

/// log*(i) = min{ n : 2_n(1) >= i }.
Nat log_star(Nat i) noexcept;

/// min{ j : 2_n(j^c) >= i }, c >= 1.
Nat root_log(Nat n, Nat c, Nat i);

/// 1 if c = 0, else ceil(i / c).
Nat scaled_div(Nat i, Nat c) noexcept;

}  // namespace rtl
