#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rtl/funclib.hpp"
#include "rtl/types.hpp"

namespace rtl {

using Tuple = std::vector<Nat>;

/// Strictly increasing `dim`-tuples over [lo, hi], ranked lexicographically.
/// hi < lo gives an empty point set.
class TupleDomain {
public:
    TupleDomain(unsigned dim, Nat lo, Nat hi);

    unsigned dim() const noexcept { return dim_; }
    Nat lo() const noexcept { return lo_; }
    Nat hi() const noexcept { return hi_; }
    Nat points() const noexcept { return points_; }
    std::size_t size() const noexcept { return size_; }

    bool contains(std::span<const Nat> t) const noexcept;
    std::size_t rank(std::span<const Nat> t) const;
    Tuple unrank(std::size_t r) const;

    /// First tuple in lexicographic order; empty optional when size() == 0.
    std::optional<Tuple> first() const;
    /// Advances to the lexicographic successor; false past the end.
    bool next(Tuple& t) const noexcept;

    template <class F>
    void for_each(F&& fn) const {
        auto t = first();
        if (!t) return;
        std::size_t r = 0;
        do {
            fn(static_cast<const Tuple&>(*t), r++);
        } while (next(*t));
    }

    friend bool operator==(const TupleDomain& a, const TupleDomain& b) noexcept {
        return a.dim_ == b.dim_ && a.lo_ == b.lo_ && a.points_ == b.points_;
    }

private:
    std::size_t choose(Nat n, Nat k) const noexcept { return k > n ? 0 : binom_[n * (dim_ + 1) + k]; }

    unsigned dim_;
    Nat lo_;
    Nat hi_;
    Nat points_;
    std::size_t size_;
    std::vector<std::size_t> binom_;  // choose(n, k) for n <= points, k <= dim
};

/// n choose k, throwing ResourceError when it does not fit in size_t.
std::size_t binomial(Nat n, Nat k);

/// Dense table of fixed-width colour values indexed by TupleDomain rank.
class ColourTable {
public:
    ColourTable(TupleDomain domain, unsigned width);

    const TupleDomain& domain() const noexcept { return domain_; }
    unsigned width() const noexcept { return width_; }

    std::span<const std::uint32_t> at(std::size_t rank) const noexcept {
        return {values_.data() + rank * width_, width_};
    }
    std::span<const std::uint32_t> at(std::span<const Nat> t) const { return at(domain_.rank(t)); }
    void set(std::size_t rank, std::span<const std::uint32_t> value);
    void set(std::size_t rank, std::span<const Nat> value);

    const std::vector<std::uint32_t>& raw() const noexcept { return values_; }

    friend bool operator==(const ColourTable&, const ColourTable&) = default;

private:
    TupleDomain domain_;
    unsigned width_;
    std::vector<std::uint32_t> values_;
};

/// C : increasing d-tuples over [lo, hi] -> N^width (adjacent Ramsey).
class ArColouring {
public:
    ArColouring(TupleDomain domain, unsigned width) : table_(std::move(domain), width) {}

    const TupleDomain& domain() const noexcept { return table_.domain(); }
    unsigned width() const noexcept { return table_.width(); }
    std::span<const std::uint32_t> value(std::size_t rank) const noexcept { return table_.at(rank); }
    std::span<const std::uint32_t> value(std::span<const Nat> t) const { return table_.at(t); }
    void set(std::size_t rank, std::span<const std::uint32_t> v) { table_.set(rank, v); }
    void set(std::size_t rank, std::span<const Nat> v) { table_.set(rank, v); }
    const ColourTable& table() const noexcept { return table_; }

    friend bool operator==(const ArColouring&, const ArColouring&) = default;

private:
    ColourTable table_;
};

/// C : d-subsets of [m, R] -> {0, ..., colours-1} (Paris-Harrington).
class PhColouring {
public:
    PhColouring(TupleDomain domain, Nat colours);

    const TupleDomain& domain() const noexcept { return table_.domain(); }
    Nat colours() const noexcept { return colours_; }
    std::uint32_t value(std::size_t rank) const noexcept { return table_.at(rank)[0]; }
    std::uint32_t value(std::span<const Nat> t) const { return table_.at(t)[0]; }
    void set(std::size_t rank, Nat colour);
    const ColourTable& table() const noexcept { return table_; }

    friend bool operator==(const PhColouring&, const PhColouring&) = default;

private:
    ColourTable table_;
    Nat colours_;
};

/// C : d-subsets of [a, R] -> N (Kanamori-McAloon).
class KmColouring {
public:
    explicit KmColouring(TupleDomain domain) : table_(std::move(domain), 1) {}

    const TupleDomain& domain() const noexcept { return table_.domain(); }
    std::uint32_t value(std::size_t rank) const noexcept { return table_.at(rank)[0]; }
    std::uint32_t value(std::span<const Nat> t) const { return table_.at(t)[0]; }
    void set(std::size_t rank, Nat v);
    const ColourTable& table() const noexcept { return table_; }

    friend bool operator==(const KmColouring&, const KmColouring&) = default;

private:
    ColourTable table_;
};

enum class Kind { AR, PH, KM };

std::string_view to_string(Kind k) noexcept;
Kind parse_kind(std::string_view text);

/// Parameters of one theorem instance.
///   AR: colourings of d-tuples over [0, R] into N^r, f-limited.
///   PH: colourings of d-subsets of [m, R] into r colours; witnesses need |H| >= f(min H).
///   KM: colourings of d-subsets of [a, R], f-regressive; witnesses are min-homogeneous of size m.
struct Params {
    Kind kind = Kind::AR;
    unsigned d = 1;
    Nat r = 1;
    Nat m = 0;
    Nat a = 0;
    ParamFunction f = ParamFunction::identity();

    /// Left end of the colouring domain.
    Nat lo() const noexcept;
};

using Colouring = std::variant<ArColouring, PhColouring, KmColouring>;

/// A colouring claimed bad for its parameters at R.
struct Certificate {
    Params params;
    Nat R = 0;
    Colouring colouring;
};

/// a <= b coordinatewise. Throws InvalidArgument on width mismatch.
bool componentwise_leq(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// max C(x) <= f(max x) + 1 everywhere.
bool is_limited(const ArColouring& c, const ParamFunction& f);

/// C(x) <= f(min x) everywhere.
bool is_regressive(const KmColouring& c, const ParamFunction& f);

/// Lexicographically least x_1 < ... < x_{d+1} with C(x_1..x_d) <= C(x_2..x_{d+1}).
std::optional<Tuple> find_adjacent_pair(const ArColouring& c);

/// Required witness size for a PH set with minimum h: max(1, f(h)).
Nat ph_required_size(const ParamFunction& f, Nat h);

/// Lexicographically least H of size exactly max(1, f(min H)) on which C is constant.
/// Any larger witness contains one of these, so absence is exhaustive.
std::optional<Tuple> find_homogeneous(const PhColouring& c, const ParamFunction& f);

/// Lexicographically least H of size m whose d-subsets with equal minimum share a colour.
std::optional<Tuple> find_min_homogeneous(const KmColouring& c, Nat m);

bool is_homogeneous(const PhColouring& c, std::span<const Nat> h);
bool is_min_homogeneous(const KmColouring& c, std::span<const Nat> h);

/// Re-checks a certificate: shape matches params, colouring is limited /
/// within r colours / regressive as required, and no witness exists.
bool verify_certificate(const Certificate& cert);

/// Line-oriented text format. Header `KIND d lo hi r`, then one line per
/// domain tuple in lexicographic order: `x1 ... xd : v1 ... vw`.
/// r is the value width for AR, the colour count for PH, and 1 for KM.
std::string to_text(const Colouring& c);
Colouring parse_colouring(std::string_view text);

Kind kind_of(const Colouring& c) noexcept;
const TupleDomain& domain_of(const Colouring& c) noexcept;

}  // namespace rtl
