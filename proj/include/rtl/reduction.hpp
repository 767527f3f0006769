#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtl/colouring.hpp"
#include "rtl/search.hpp"

namespace rtl {

/// A colouring given by a rule rather than a table. Accepts every tuple in
/// [lo, hi]^dim, increasing or not.
class FunctionColouring {
public:
    using Eval = std::function<void(std::span<const Nat>, std::uint32_t*)>;

    FunctionColouring(unsigned dim, Nat lo, Nat hi, unsigned width, Eval eval);

    unsigned dim() const noexcept { return dim_; }
    Nat lo() const noexcept { return lo_; }
    Nat hi() const noexcept { return hi_; }
    unsigned width() const noexcept { return width_; }

    bool covers(std::span<const Nat> x) const noexcept;
    /// Throws DomainError outside [lo, hi]^dim.
    std::vector<std::uint32_t> operator()(std::span<const Nat> x) const;
    void eval_into(std::span<const Nat> x, std::uint32_t* out) const;

    /// Table on the increasing tuples of the domain.
    ArColouring materialize() const;

private:
    unsigned dim_;
    Nat lo_;
    Nat hi_;
    unsigned width_;
    Eval eval_;
};

inline constexpr Nat kDefaultLevelPoints = Nat{1} << 20;

/// Base-(i+1) digits of each coordinate, most significant first, over
/// {0, ..., 2_d(i^c)}^{d+1}. Injective. Throws ResourceError when 2_d(i^c)
/// exceeds max_hi.
FunctionColouring digit_injective_colouring(unsigned d, Nat c, Nat i, Nat max_hi = kDefaultLevelPoints);

/// (C'(x), i - C'(x)) for the digit colouring C'. Distinct tuples get
/// componentwise-incomparable values.
FunctionColouring antichain_colouring(unsigned d, Nat c, Nat i, Nat max_hi = kDefaultLevelPoints);

/// Digits needed to write every value <= hi in the given base (at least 1).
unsigned digit_width(Nat hi, Nat base);

struct LevelColouring {
    FunctionColouring colouring;
    bool verified_bad = true;  // false when no bad colouring exists and a zero fill stands in
};

class LevelFamily {
public:
    enum class Provenance { constructed, searched_certificate };

    LevelFamily(Kind kind, Provenance provenance) : kind_(kind), provenance_(provenance) {}

    Kind kind() const noexcept { return kind_; }
    Provenance provenance() const noexcept { return provenance_; }

    void add(Nat level, LevelColouring c);
    bool has(Nat level) const noexcept { return levels_.count(level) != 0; }
    /// Throws DomainError for a missing level.
    const LevelColouring& at(Nat level) const;
    const std::map<Nat, LevelColouring>& levels() const noexcept { return levels_; }
    bool all_verified() const noexcept;

private:
    Kind kind_;
    Provenance provenance_;
    std::map<Nat, LevelColouring> levels_;
};

/// d: C has dimension d+1 for AR and PH, d for KM. a_d and m feed the level
/// families; m is also the left end of the PH source domain.
struct ReductionConfig {
    unsigned d = 1;
    Nat c = 1;
    Nat a_d = 1;
    Nat m = 0;
    ParamFunction f = ParamFunction::identity();
};

/// Antichain colourings of (d+1)-tuples over [0, R], one per value of f on
/// [0, R]. Level L uses base L+2 digits complemented against L+1, so it is
/// (L+1)-bounded; all levels are zero-padded to a common width.
LevelFamily ar_antichain_levels(const ReductionConfig& cfg, Nat R);

/// Per-fibre bad PH colourings: on {x in [lo, R] : f(x) = L}, (d+1)-subsets
/// into 2^{(c+2)a_d} colours with no homogeneous set of size ph_level_size(L).
LevelFamily ph_searched_levels(const ReductionConfig& cfg, Nat lo, Nat R, const SearchConfig& search = {});

/// Per-fibre bad KM colourings: L-regressive on d-subsets of the fibre of L,
/// no min-homogeneous set of size a_d(m+1).
LevelFamily km_searched_levels(const ReductionConfig& cfg, Nat lo, Nat R, const SearchConfig& search = {});

/// --- AR ---

/// D = D1 ++ D2 ++ D3 on (d+1)-tuples over [0, R]: D1 = C at the f-images (zero
/// unless they increase), D2 = w(i) for the largest i with f(x_{i-1}) = f(x_i)
/// (w(1) if none), D3 = the level colouring at f(max x). f-limited.
ArColouring compress_ar(const ArColouring& C, const ReductionConfig& cfg, const LevelFamily& levels, Nat R);

/// --- PH ---

struct PhColour {
    Nat source = 0;  // colour of C at the f-images
    Nat level = 0;   // colour of the level colouring
    Nat i = 0;
    Nat j = 0;
};

Nat ph_level_colours(const ReductionConfig& cfg);                 // 2^{(c+2) a_d}
Nat ph_colour_space(const ReductionConfig& cfg, Nat r);          // r * level colours * (d+2)^2
Nat ph_level_size(const ReductionConfig& cfg, Nat level);        // max(d+3, a_d * level)
ParamFunction ph_compressed_parameter(const ReductionConfig& cfg);  // x -> ph_level_size(f(x))
Nat ph_encode(const PhColour& v, const ReductionConfig& cfg, Nat r);
PhColour ph_decode(Nat v, const ReductionConfig& cfg, Nat r);

/// D on (d+1)-subsets of [lo, R]; needs f([lo, R]) inside C's domain.
PhColouring compress_ph(const PhColouring& C, const ReductionConfig& cfg, const LevelFamily& levels, Nat lo, Nat R);

/// --- KM ---

struct KmColour {
    Nat code = 0;   // E: 0 increasing, 1 constant, >= 2 mixed pattern
    Nat inner = 0;  // C~1 for code 0, C~2 for code 1
};

Nat km_pattern_code(unsigned d, Nat i, Nat j);
Nat km_encode(const KmColour& v, unsigned d);
KmColour km_decode(Nat v, unsigned d);
ParamFunction km_compressed_parameter(const ReductionConfig& cfg);  // x -> (d+1)^2 + 2 + 2 f(x)

/// C on d-subsets of [lo, R] (d >= 2); D must be id-regressive on a domain
/// containing f([lo, R]).
KmColouring compress_km(const KmColouring& D, const ReductionConfig& cfg, const LevelFamily& levels, Nat lo, Nat R);

/// Regressiveness headroom at the left end 2_{d-2}((a_d m)^{cm}) for
/// f = c-th root of log^{d-2}: (d+1)^2 + 2 + 2 root_{c+1}(y) < root_c(y), y = (a_d m)^{cm}.
struct KmHeadroom {
    BigNat y;
    BigNat lhs;
    BigNat rhs;
    bool holds = false;
};
KmHeadroom km_headroom_check(unsigned d, Nat c, Nat a_d, Nat m);

/// Throws DomainError when the headroom inequality fails.
void require_km_headroom(unsigned d, Nat c, Nat a_d, Nat m);

/// --- transfer tests ---

/// Zero colourings at every level f takes on [lo, R], with the given width.
/// Not bad; useful for fault injection.
LevelFamily zero_levels(Kind kind, const ReductionConfig& cfg, Nat lo, Nat R, unsigned width);

struct TransferOptions {
    Nat r = 1;                          // AR value width, PH colours
    Nat value_cap = kNatMax;            // AR/KM source values are at most this
    std::uint64_t max_sources = 1u << 20;
    bool allow_sampling = false;        // sample instead of failing when there are too many sources
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    SearchConfig level_search{};
    std::optional<LevelFamily> levels;  // replaces the default level family when set
};

inline constexpr std::size_t kMaxStoredCounterexamples = 16;

struct TransferCounterexample {
    std::uint64_t source = 0;  // index in enumeration (or sample) order
    Tuple points;
    std::string reason;
    std::string colouring;  // source colouring, in the text format
};

struct TransferReport {
    Kind kind = Kind::AR;
    std::uint64_t sources = 0;
    std::uint64_t cases = 0;      // windows or subsets examined
    std::uint64_t premises = 0;   // cases where the contract's hypothesis held
    bool sampled = false;
    bool levels_verified = true;
    std::uint64_t failures = 0;  // total; only the first kMaxStoredCounterexamples are kept
    std::vector<TransferCounterexample> counterexamples;
};

/// AR: sources are id-limited C on (d+1)-tuples over [0, f(R)]; every (d+2)-tuple of [0, R] is checked.
/// PH: sources C : [m, f(R)]^{d+1} -> r; every subset of [lo, R] larger than d+2.
/// KM: sources are id-regressive D on d-subsets of [0, f(R)]; every subset of [0, R] larger than d+2.
/// Throws BudgetExceeded when sources exceed max_sources and sampling is off.
TransferReport transfer_test(Kind kind, const ReductionConfig& cfg, Nat R, const TransferOptions& opt = {});

}  // namespace rtl
