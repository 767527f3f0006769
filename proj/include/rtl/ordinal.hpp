#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtl/types.hpp"

namespace rtl {

struct OrdinalTerm;

/// An ordinal below epsilon_0 in Cantor normal form:
/// w^e1*k1 + ... + w^en*kn with e1 > ... > en and every k >= 1.
/// The empty sum is 0.
class Ordinal {
public:
    Ordinal() = default;

    static Ordinal natural(Nat n);
    static Ordinal omega();
    static Ordinal omega_power(const Ordinal& exponent, Nat coefficient = 1);

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_successor() const noexcept;
    bool is_limit() const noexcept { return !is_zero() && !is_successor(); }
    std::optional<Nat> as_natural() const noexcept;
    /// Coefficient of the w^0 term.
    Nat finite_part() const noexcept;
    /// The ordinal with its finite tail removed (0 or a limit).
    Ordinal limit_part() const;

    const std::vector<OrdinalTerm>& terms() const noexcept { return terms_; }

    /// Nesting depth of the exponent tree; 0 for the ordinal 0.
    std::size_t height() const noexcept;

    friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

private:
    friend Ordinal fund_seq(const Ordinal& a, Nat n);

    std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
    Ordinal exponent;
    Nat coefficient = 1;
};

/// Marker for epsilon_0, accepted only by fund_seq.
struct Epsilon0 {};

inline Nat Ordinal::finite_part() const noexcept { return is_successor() ? terms_.back().coefficient : 0; }

/// w_1 = w, w_{k+1} = w^{w_k}; w_0 = 1. Throws ResourceError above depth_cap.
Ordinal omega_tower(Nat d, Nat depth_cap = 64);

/// Cantor-normal-form fundamental sequences:
/// (g + w^{b+1})[n] = g + w^b*n, (g + w^l)[n] = g + w^{l[n]} for limit l.
/// Throws InvalidArgument for 0 and successors.
Ordinal fund_seq(const Ordinal& a, Nat n);
/// epsilon_0[n] = w_n.
Ordinal fund_seq(Epsilon0, Nat n);

struct HardyRun {
    Nat value;
    std::uint64_t steps;
    bool reached;  // value >= threshold was established; `value` is a lower bound when it stopped early
};

/// Evaluates H_a(x) with H_0(x)=x, H_{b+1}(x)=H_b(x+1), H_l(x)=H_{l[x]}(x).
/// Each limit substitution and each collapsed run of successor steps costs one
/// step. Stops early once the running argument reaches `threshold`, since the
/// argument never decreases. Throws BudgetExceeded when steps run out.
HardyRun hardy_run(const Ordinal& a, Nat x, std::uint64_t budget, Nat threshold = kNatMax);

/// Exact H_a(x). Throws BudgetExceeded, or ResourceError on 64-bit overflow.
Nat hardy(const Ordinal& a, Nat x, std::uint64_t budget);

/// min{ x : H_a(x) >= i }; budget is shared across the scan.
Nat hardy_inverse(const Ordinal& a, Nat i, std::uint64_t budget);

/// Pairs (alpha, beta, x) with alpha < beta but H_alpha(x) > H_beta(x).
struct HardyMonotonicityViolation {
    Ordinal smaller;
    Ordinal larger;
    Nat x;
};
std::vector<HardyMonotonicityViolation> hardy_monotonicity_violations(const std::vector<Ordinal>& probes,
                                                                      const std::vector<Nat>& xs,
                                                                      std::uint64_t budget);

/// Literal grammar: `0`, `w`, `w^a*k+b`, exponentiation right-associating,
/// parentheses for compound exponents, e.g. `w^w*2+w*3+5`.
std::string to_string(const Ordinal& a);
Ordinal parse_ordinal(std::string_view text);

}  // namespace rtl
