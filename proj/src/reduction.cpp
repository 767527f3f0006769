#include "rtl/reduction.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <memory>
#include <random>

#include "rtl/errors.hpp"

namespace rtl {

FunctionColouring::FunctionColouring(unsigned dim, Nat lo, Nat hi, unsigned width, Eval eval)
    : dim_(dim), lo_(lo), hi_(hi), width_(width), eval_(std::move(eval)) {
    if (dim == 0) throw InvalidArgument("colouring dimension must be >= 1");
}

bool FunctionColouring::covers(std::span<const Nat> x) const noexcept {
    if (x.size() != dim_) return false;
    return std::all_of(x.begin(), x.end(), [&](Nat v) { return v >= lo_ && v <= hi_; });
}

std::vector<std::uint32_t> FunctionColouring::operator()(std::span<const Nat> x) const {
    std::vector<std::uint32_t> out(width_);
    eval_into(x, out.data());
    return out;
}

void FunctionColouring::eval_into(std::span<const Nat> x, std::uint32_t* out) const {
    if (!covers(x)) throw DomainError("tuple outside the colouring's domain");
    eval_(x, out);
}

ArColouring FunctionColouring::materialize() const {
    ArColouring out(TupleDomain(dim_, lo_, hi_), width_);
    std::vector<std::uint32_t> v(width_);
    out.domain().for_each([&](const Tuple& t, std::size_t r) {
        eval_(t, v.data());
        out.set(r, std::span<const std::uint32_t>(v));
    });
    return out;
}

unsigned digit_width(Nat hi, Nat base) {
    if (base < 2) throw InvalidArgument("digit base must be >= 2");
    unsigned w = 1;
    Nat p = base;
    while (p <= hi) {
        p = sat_mul(p, base);
        ++w;
    }
    return w;
}

namespace {

void write_digits(Nat v, Nat base, unsigned width, std::uint32_t* out) {
    for (unsigned k = width; k-- > 0;) {
        out[k] = static_cast<std::uint32_t>(v % base);
        v /= base;
    }
}

Nat level_domain_hi(unsigned d, Nat c, Nat i, Nat max_hi) {
    if (i == 0) throw InvalidArgument("level index must be >= 1");
    if (c == 0) throw InvalidArgument("exponent c must be >= 1");
    const Nat base = sat_pow(i, c);
    if (base == kNatMax) throw ResourceError("i^c overflows");
    BigNat hi;
    try {
        hi = tower(d, base, 64);
    } catch (const ResourceError&) {
        throw ResourceError("2_d(i^c) exceeds the level domain cap");
    }
    if (hi > max_hi) throw ResourceError("2_d(i^c) exceeds the level domain cap");
    return static_cast<Nat>(hi);
}

}  // namespace

FunctionColouring digit_injective_colouring(unsigned d, Nat c, Nat i, Nat max_hi) {
    const Nat hi = level_domain_hi(d, c, i, max_hi);
    const unsigned w = digit_width(hi, i + 1);
    const unsigned dim = d + 1;
    return FunctionColouring(dim, 0, hi, dim * w, [=](std::span<const Nat> x, std::uint32_t* out) {
        for (unsigned k = 0; k < dim; ++k) write_digits(x[k], i + 1, w, out + k * w);
    });
}

FunctionColouring antichain_colouring(unsigned d, Nat c, Nat i, Nat max_hi) {
    FunctionColouring inner = digit_injective_colouring(d, c, i, max_hi);
    const unsigned w = inner.width();
    const auto limit = static_cast<std::uint32_t>(i);
    return FunctionColouring(inner.dim(), 0, inner.hi(), 2 * w, [=](std::span<const Nat> x, std::uint32_t* out) {
        inner.eval_into(x, out);
        for (unsigned k = 0; k < w; ++k) out[w + k] = limit - out[k];
    });
}

void LevelFamily::add(Nat level, LevelColouring c) { levels_.insert_or_assign(level, std::move(c)); }

const LevelColouring& LevelFamily::at(Nat level) const {
    auto it = levels_.find(level);
    if (it == levels_.end()) throw DomainError("level family has no colouring at level " + std::to_string(level));
    return it->second;
}

bool LevelFamily::all_verified() const noexcept {
    return std::all_of(levels_.begin(), levels_.end(), [](const auto& kv) { return kv.second.verified_bad; });
}

namespace {

// Maximal intervals of [lo, R] on which f is constant.
struct Fibre {
    Nat level;
    Nat first;
    Nat last;
};

std::vector<Fibre> fibres(const ParamFunction& f, Nat lo, Nat R) {
    std::vector<Fibre> out;
    for (Nat x = lo; x <= R; ++x) {
        const Nat v = f(x);
        if (!out.empty() && out.back().level == v) {
            out.back().last = x;
        } else {
            if (!out.empty() && v < out.back().level) throw InvalidArgument("parameter function is not nondecreasing");
            out.push_back({v, x, x});
        }
    }
    return out;
}

// Wraps a searched table as a level colouring; tuples leaving the fibre read 0.
LevelColouring table_level(unsigned dim, Nat first, Nat last, std::optional<Certificate> cert) {
    if (!cert) {
        return {FunctionColouring(dim, first, last, 1, [](std::span<const Nat>, std::uint32_t* out) { out[0] = 0; }),
                false};
    }
    auto table = std::make_shared<const ColourTable>(std::visit([](const auto& c) { return c.table(); }, cert->colouring));
    return {FunctionColouring(dim, first, last, 1,
                              [table](std::span<const Nat> x, std::uint32_t* out) {
                                  out[0] = std::is_sorted(x.begin(), x.end()) &&
                                                   std::adjacent_find(x.begin(), x.end()) == x.end()
                                               ? table->at(x)[0]
                                               : 0;
                              }),
            true};
}

LevelColouring searched_level(const Params& p, Nat first, Nat last, const SearchConfig& search) {
    std::optional<Certificate> cert;
    try {
        BadColouringResult res = find_bad_colouring(p, last, search);
        if (!res.exhausted) cert = std::move(res.certificate);
    } catch (const ResourceError&) {
    }
    return table_level(p.d, first, last, std::move(cert));
}

}  // namespace

LevelFamily ar_antichain_levels(const ReductionConfig& cfg, Nat R) {
    const unsigned dim = cfg.d + 1;
    LevelFamily family(Kind::AR, LevelFamily::Provenance::constructed);
    const auto parts = fibres(cfg.f, 0, R);
    if (parts.empty()) return family;
    const unsigned padded = 2 * dim * digit_width(R, parts.front().level + 2);
    for (const Fibre& fb : parts) {
        const Nat L = fb.level;
        if (L > std::numeric_limits<std::uint32_t>::max() - 2) throw ResourceError("level too large for 32-bit values");
        const Nat base = L + 2;
        const unsigned w = digit_width(R, base);
        family.add(L, {FunctionColouring(dim, 0, R, padded,
                                         [=](std::span<const Nat> x, std::uint32_t* out) {
                                             std::fill(out, out + padded, 0u);
                                             for (unsigned k = 0; k < dim; ++k) write_digits(x[k], base, w, out + k * w);
                                             const unsigned half = dim * w;
                                             for (unsigned k = 0; k < half; ++k)
                                                 out[half + k] = static_cast<std::uint32_t>(L + 1) - out[k];
                                         }),
                       true});
    }
    return family;
}

Nat ph_level_colours(const ReductionConfig& cfg) {
    const Nat bits = sat_mul(sat_add(cfg.c, 2), cfg.a_d);
    if (bits >= 31) throw ResourceError("2^{(c+2) a_d} colours exceed 32-bit colour values");
    return Nat{1} << bits;
}

Nat ph_colour_space(const ReductionConfig& cfg, Nat r) {
    const Nat side = Nat{cfg.d} + 2;
    const Nat total = sat_mul(sat_mul(r, ph_level_colours(cfg)), side * side);
    if (total > std::numeric_limits<std::uint32_t>::max()) throw ResourceError("PH colour space exceeds 32-bit values");
    return total;
}

Nat ph_level_size(const ReductionConfig& cfg, Nat level) { return std::max<Nat>(Nat{cfg.d} + 3, sat_mul(cfg.a_d, level)); }

ParamFunction ph_compressed_parameter(const ReductionConfig& cfg) {
    return ParamFunction("ph-compressed(" + cfg.f.name() + ")",
                         [cfg](Nat x) { return ph_level_size(cfg, cfg.f(x)); });
}

Nat ph_encode(const PhColour& v, const ReductionConfig& cfg, Nat r) {
    const Nat K = ph_level_colours(cfg);
    const Nat side = Nat{cfg.d} + 2;
    if (v.source >= r || v.level >= K || v.i >= side || v.j >= side) throw InvalidArgument("PH colour component out of range");
    return ((v.source * K + v.level) * side + v.i) * side + v.j;
}

PhColour ph_decode(Nat v, const ReductionConfig& cfg, Nat r) {
    if (v >= ph_colour_space(cfg, r)) throw InvalidArgument("PH colour out of range");
    const Nat K = ph_level_colours(cfg);
    const Nat side = Nat{cfg.d} + 2;
    PhColour out;
    out.j = v % side;
    v /= side;
    out.i = v % side;
    v /= side;
    out.level = v % K;
    out.source = v / K;
    return out;
}

LevelFamily ph_searched_levels(const ReductionConfig& cfg, Nat lo, Nat R, const SearchConfig& search) {
    LevelFamily family(Kind::PH, LevelFamily::Provenance::searched_certificate);
    const Nat K = ph_level_colours(cfg);
    for (const Fibre& fb : fibres(cfg.f, lo, R)) {
        Params p{Kind::PH, cfg.d + 1, K, fb.first, 0, ParamFunction::constant(ph_level_size(cfg, fb.level))};
        family.add(fb.level, searched_level(p, fb.first, fb.last, search));
    }
    return family;
}

LevelFamily km_searched_levels(const ReductionConfig& cfg, Nat lo, Nat R, const SearchConfig& search) {
    if (cfg.d < 2) throw InvalidArgument("KM compression needs d >= 2");
    LevelFamily family(Kind::KM, LevelFamily::Provenance::searched_certificate);
    const Nat size = sat_mul(cfg.a_d, sat_add(cfg.m, 1));
    for (const Fibre& fb : fibres(cfg.f, lo, R)) {
        Params p{Kind::KM, cfg.d, 1, size, fb.first, ParamFunction::constant(fb.level)};
        family.add(fb.level, searched_level(p, fb.first, fb.last, search));
    }
    return family;
}

namespace {

Tuple images(const ParamFunction& f, std::span<const Nat> x) {
    Tuple y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = f(x[k]);
    return y;
}

bool strictly_increasing(std::span<const Nat> y) {
    for (std::size_t k = 1; k < y.size(); ++k)
        if (y[k - 1] >= y[k]) return false;
    return true;
}

bool constant(std::span<const Nat> y) { return std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end(); }

// Largest 1-based i with y_1 = ... = y_i, and largest j with y_1 < ... < y_j.
std::pair<Nat, Nat> prefix_patterns(std::span<const Nat> y) {
    Nat i = 1, j = 1;
    while (i < y.size() && y[i] == y[0]) ++i;
    while (j < y.size() && y[j - 1] < y[j]) ++j;
    return {i, j};
}

void require_inside(const TupleDomain& dom, std::span<const Nat> y) {
    if (!dom.contains(y)) throw DomainError("f-images leave the source colouring's domain");
}

}  // namespace

ArColouring compress_ar(const ArColouring& C, const ReductionConfig& cfg, const LevelFamily& levels, Nat R) {
    const unsigned dim = cfg.d + 1;
    if (C.domain().dim() != dim) throw InvalidArgument("source colouring must have dimension d+1");
    if (levels.levels().empty()) throw DomainError("empty level family");
    const unsigned r = C.width();
    const unsigned level_width = levels.levels().begin()->second.colouring.width();
    const unsigned width = r + dim + level_width;
    ArColouring D(TupleDomain(dim, 0, R), width);
    std::vector<std::uint32_t> v(width);
    D.domain().for_each([&](const Tuple& x, std::size_t rank) {
        std::fill(v.begin(), v.end(), 0u);
        const Tuple y = images(cfg.f, x);
        if (strictly_increasing(y)) {
            require_inside(C.domain(), y);
            auto src = C.value(y);
            std::copy(src.begin(), src.end(), v.begin());
        }
        unsigned unit = 1;
        for (unsigned k = dim; k >= 2; --k) {
            if (y[k - 2] == y[k - 1]) {
                unit = k;
                break;
            }
        }
        v[r + unit - 1] = 1;
        const LevelColouring& lv = levels.at(y.back());
        if (lv.colouring.width() != level_width) throw DomainError("level colourings differ in width");
        lv.colouring.eval_into(x, v.data() + r + dim);
        D.set(rank, std::span<const std::uint32_t>(v));
    });
    if (!is_limited(D, cfg.f)) throw DomainError("compressed AR colouring is not f-limited");
    return D;
}

PhColouring compress_ph(const PhColouring& C, const ReductionConfig& cfg, const LevelFamily& levels, Nat lo, Nat R) {
    const unsigned dim = cfg.d + 1;
    if (C.domain().dim() != dim) throw InvalidArgument("source colouring must have dimension d+1");
    const Nat r = C.colours();
    const Nat K = ph_level_colours(cfg);
    PhColouring D(TupleDomain(dim, lo, R), ph_colour_space(cfg, r));
    D.domain().for_each([&](const Tuple& x, std::size_t rank) {
        const Tuple y = images(cfg.f, x);
        PhColour v;
        const auto [i, j] = prefix_patterns(y);
        if (strictly_increasing(y)) {
            require_inside(C.domain(), y);
            v = {C.value(y), 0, 0, dim};
        } else if (i > 1 && i < dim && j >= 1 && j < dim) {
            v = {0, 0, i, j};
        } else {
            Nat level = 0;
            const LevelColouring& lv = levels.at(y.front());
            if (lv.colouring.covers(x)) {
                std::uint32_t out = 0;
                lv.colouring.eval_into(x, &out);
                level = out;
            }
            if (level >= K) throw DomainError("level colour exceeds 2^{(c+2) a_d}");
            v = {0, level, dim, 0};
        }
        D.set(rank, ph_encode(v, cfg, r));
    });
    return D;
}

Nat km_pattern_code(unsigned d, Nat i, Nat j) {
    if (i < 1 || i > d || j < 1 || j > d) throw InvalidArgument("KM pattern out of range");
    if (j == d) return 0;
    if (i == d) return 1;
    return (i - 1) * d + (j - 1) + 2;
}

Nat km_encode(const KmColour& v, unsigned d) {
    const Nat base = (Nat{d} + 1) * (Nat{d} + 1);
    if (v.code == 0) return sat_add(base, sat_add(sat_mul(2, v.inner), 1));
    if (v.code == 1) return sat_add(base, sat_add(sat_mul(2, v.inner), 2));
    if (v.code > base || v.inner != 0) throw InvalidArgument("KM colour component out of range");
    return v.code;
}

KmColour km_decode(Nat v, unsigned d) {
    const Nat base = (Nat{d} + 1) * (Nat{d} + 1);
    if (v <= base) return {v, 0};
    const Nat u = v - base - 1;
    return u % 2 == 0 ? KmColour{0, u / 2} : KmColour{1, (u - 1) / 2};
}

ParamFunction km_compressed_parameter(const ReductionConfig& cfg) {
    const Nat base = (Nat{cfg.d} + 1) * (Nat{cfg.d} + 1) + 2;
    return ParamFunction("km-compressed(" + cfg.f.name() + ")",
                         [cfg, base](Nat x) { return sat_add(base, sat_mul(2, cfg.f(x))); });
}

KmColouring compress_km(const KmColouring& D, const ReductionConfig& cfg, const LevelFamily& levels, Nat lo, Nat R) {
    const unsigned d = cfg.d;
    if (d < 2) throw InvalidArgument("KM compression needs d >= 2");
    if (D.domain().dim() != d) throw InvalidArgument("source colouring must have dimension d");
    KmColouring C(TupleDomain(d, lo, R));
    C.domain().for_each([&](const Tuple& x, std::size_t rank) {
        const Tuple y = images(cfg.f, x);
        const auto [i, j] = prefix_patterns(y);
        KmColour v{km_pattern_code(d, i, j), 0};
        if (v.code == 0) {
            require_inside(D.domain(), y);
            v.inner = D.value(y);
        } else if (v.code == 1) {
            const LevelColouring& lv = levels.at(y.front());
            if (lv.colouring.covers(x)) {
                std::uint32_t out = 0;
                lv.colouring.eval_into(x, &out);
                v.inner = out;
            }
        }
        C.set(rank, km_encode(v, d));
    });
    if (!is_regressive(C, km_compressed_parameter(cfg))) throw DomainError("compressed KM colouring is not regressive");
    return C;
}

KmHeadroom km_headroom_check(unsigned d, Nat c, Nat a_d, Nat m) {
    if (d < 2) throw InvalidArgument("KM headroom needs d >= 2");
    if (c == 0 || a_d == 0) throw InvalidArgument("c and a_d must be >= 1");
    const Nat base = sat_mul(a_d, m);
    const Nat exponent = sat_mul(c, m);
    if (base == kNatMax || exponent > (Nat{1} << 24) ||
        (base > 1 && sat_mul(std::bit_width(base), exponent) > (Nat{1} << 24)))
        throw ResourceError("(a_d m)^{cm} exceeds the bit cap");
    KmHeadroom out;
    // log^{d-2} inverts 2_{d-2} exactly, so the roots are taken of y itself.
    out.y = boost::multiprecision::pow(BigNat(base), static_cast<unsigned>(exponent));
    const Nat side = Nat{d} + 1;
    out.lhs = BigNat(side * side + 2) + 2 * ceil_root(out.y, c + 1);
    out.rhs = ceil_root(out.y, c);
    out.holds = out.lhs < out.rhs;
    return out;
}

void require_km_headroom(unsigned d, Nat c, Nat a_d, Nat m) {
    if (!km_headroom_check(d, c, a_d, m).holds)
        throw DomainError("regressiveness headroom fails at the domain's left end");
}

LevelFamily zero_levels(Kind kind, const ReductionConfig& cfg, Nat lo, Nat R, unsigned width) {
    const unsigned dim = kind == Kind::KM ? cfg.d : cfg.d + 1;
    LevelFamily family(kind, LevelFamily::Provenance::constructed);
    for (const Fibre& fb : fibres(cfg.f, lo, R)) {
        const Nat first = kind == Kind::AR ? 0 : fb.first;
        const Nat last = kind == Kind::AR ? R : fb.last;
        family.add(fb.level, {FunctionColouring(dim, first, last, width,
                                                [width](std::span<const Nat>, std::uint32_t* out) {
                                                    std::fill(out, out + width, 0u);
                                                }),
                              false});
    }
    return family;
}

namespace {

// Mixed-radix enumeration (or seeded sampling) of per-position value indices.
class SourceEnumerator {
public:
    SourceEnumerator(std::vector<Nat> radix, const TransferOptions& opt) : radix_(std::move(radix)), digits_(radix_.size(), 0) {
        Nat total = 1;
        for (Nat r : radix_) {
            if (r == 0) throw InvalidArgument("empty value range in source enumeration");
            total = sat_mul(total, r);
        }
        if (total > opt.max_sources) {
            if (!opt.allow_sampling)
                throw BudgetExceeded("transfer_test: " + std::to_string(total) + " source colourings exceed max_sources",
                                     opt.max_sources);
            sampled_ = true;
            remaining_ = opt.samples;
            rng_.seed(opt.seed);
        } else {
            remaining_ = total;
        }
    }

    bool sampled() const noexcept { return sampled_; }

    bool next(std::vector<Nat>& out) {
        if (remaining_ == 0) return false;
        --remaining_;
        if (sampled_) {
            for (std::size_t k = 0; k < radix_.size(); ++k)
                digits_[k] = std::uniform_int_distribution<Nat>(0, radix_[k] - 1)(rng_);
            out = digits_;
            return true;
        }
        out = digits_;
        for (std::size_t k = radix_.size(); k-- > 0;) {
            if (++digits_[k] < radix_[k]) break;
            digits_[k] = 0;
        }
        return true;
    }

private:
    std::vector<Nat> radix_;
    std::vector<Nat> digits_;
    Nat remaining_ = 0;
    bool sampled_ = false;
    std::mt19937_64 rng_;
};

template <class Fn>
bool all_subsets_agree(std::span<const Nat> h, unsigned k, Fn&& same) {
    if (k > h.size()) return true;
    std::vector<std::size_t> idx(k);
    for (unsigned q = 0; q < k; ++q) idx[q] = q;
    Tuple s(k);
    while (true) {
        for (unsigned q = 0; q < k; ++q) s[q] = h[idx[q]];
        if (!same(static_cast<const Tuple&>(s))) return false;
        int q = static_cast<int>(k) - 1;
        while (q >= 0 && idx[static_cast<std::size_t>(q)] == h.size() - k + static_cast<std::size_t>(q)) --q;
        if (q < 0) return true;
        ++idx[static_cast<std::size_t>(q)];
        for (auto p = static_cast<std::size_t>(q) + 1; p < k; ++p) idx[p] = idx[p - 1] + 1;
    }
}

template <class V>
bool homogeneous_under(std::span<const Nat> h, unsigned dim, V&& value) {
    std::optional<Nat> colour;
    return all_subsets_agree(h, dim, [&](const Tuple& s) {
        const Nat v = value(s);
        if (!colour) colour = v;
        return *colour == v;
    });
}

template <class V>
bool min_homogeneous_under(std::span<const Nat> h, unsigned dim, V&& value) {
    for (std::size_t k = 0; k + dim <= h.size(); ++k) {
        std::optional<Nat> colour;
        bool ok = all_subsets_agree(h.subspan(k + 1), dim - 1, [&](const Tuple& rest) {
            Tuple s{h[k]};
            s.insert(s.end(), rest.begin(), rest.end());
            const Nat v = value(s);
            if (!colour) colour = v;
            return *colour == v;
        });
        if (!ok) return false;
    }
    return true;
}

Nat level_value(const LevelColouring& lv, std::span<const Nat> x) {
    if (!lv.colouring.covers(x)) return 0;
    std::uint32_t out = 0;
    lv.colouring.eval_into(x, &out);
    return out;
}

template <class Fn>
void for_each_large_subset(Nat lo, Nat R, unsigned min_size, Fn&& fn) {
    if (R < lo) return;
    const Nat n = R - lo + 1;
    if (n > 24) throw ResourceError("transfer_test subset scan is limited to 24 points");
    Tuple h;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) < min_size) continue;
        h.clear();
        for (Nat k = 0; k < n; ++k)
            if (mask & (std::uint32_t{1} << k)) h.push_back(lo + k);
        fn(static_cast<const Tuple&>(h));
    }
}

template <class Source>
void fail(TransferReport& rep, const Tuple& points, const char* reason, const Source& C) {
    ++rep.failures;
    if (rep.counterexamples.size() < kMaxStoredCounterexamples)
        rep.counterexamples.push_back({rep.sources, points, reason, to_text(Colouring(C))});
}

void transfer_ar(const ReductionConfig& cfg, Nat R, const TransferOptions& opt, TransferReport& rep) {
    if (opt.r == 0 || opt.r > 64) throw InvalidArgument("AR transfer width must be in [1, 64]");
    const unsigned dim = cfg.d + 1;
    const auto r = static_cast<unsigned>(opt.r);
    const TupleDomain src(dim, 0, cfg.f(R));
    std::vector<Nat> radix, bound;
    src.for_each([&](const Tuple& y, std::size_t) {
        const Nat b = std::min(sat_add(y.back(), 1), opt.value_cap);
        bound.push_back(b);
        radix.push_back(sat_pow(b + 1, r));
    });
    const LevelFamily levels = opt.levels ? *opt.levels : ar_antichain_levels(cfg, R);
    rep.levels_verified = levels.all_verified();
    SourceEnumerator it(radix, opt);
    rep.sampled = it.sampled();
    const TupleDomain windows(dim + 1, 0, R);
    std::vector<Nat> digits;
    std::vector<std::uint32_t> v(r);
    while (it.next(digits)) {
        ArColouring C(src, r);
        for (std::size_t pos = 0; pos < digits.size(); ++pos) {
            write_digits(digits[pos], bound[pos] + 1, r, v.data());
            C.set(pos, std::span<const std::uint32_t>(v));
        }
        const ArColouring D = compress_ar(C, cfg, levels, R);
        windows.for_each([&](const Tuple& x, std::size_t) {
            ++rep.cases;
            const std::span<const Nat> lo_w(x.data(), dim), hi_w(x.data() + 1, dim);
            if (!componentwise_leq(D.value(lo_w), D.value(hi_w))) return;
            ++rep.premises;
            const Tuple y = images(cfg.f, x);
            if (!strictly_increasing(y)) {
                fail(rep, x, "D windows comparable but f not strictly increasing", C);
            } else if (!componentwise_leq(C.value(std::span<const Nat>(y.data(), dim)),
                                          C.value(std::span<const Nat>(y.data() + 1, dim)))) {
                fail(rep, x, "D windows comparable but C windows at f-images are not", C);
            }
        });
        ++rep.sources;
    }
}

void transfer_ph(const ReductionConfig& cfg, Nat R, const TransferOptions& opt, TransferReport& rep) {
    const unsigned dim = cfg.d + 1;
    if (opt.r == 0) throw InvalidArgument("PH transfer needs at least one colour");
    Nat lo;
    try {
        lo = pseudo_inverse(cfg.f, cfg.m, R);
    } catch (const NotAttained&) {
        throw DomainError("f does not reach m on [0, R]");
    }
    const TupleDomain src(dim, cfg.m, cfg.f(R));
    const LevelFamily levels = opt.levels ? *opt.levels : ph_searched_levels(cfg, lo, R, opt.level_search);
    rep.levels_verified = levels.all_verified();
    SourceEnumerator it(std::vector<Nat>(src.size(), opt.r), opt);
    rep.sampled = it.sampled();
    std::vector<Nat> digits;
    while (it.next(digits)) {
        PhColouring C(src, opt.r);
        for (std::size_t pos = 0; pos < digits.size(); ++pos) C.set(pos, digits[pos]);
        const PhColouring D = compress_ph(C, cfg, levels, lo, R);
        for_each_large_subset(lo, R, dim + 2, [&](const Tuple& h) {
            ++rep.cases;
            if (!is_homogeneous(D, h)) return;
            ++rep.premises;
            const Tuple y = images(cfg.f, h);
            if (strictly_increasing(y)) {
                if (!is_homogeneous(C, y))
                    fail(rep, h, "f-images of a D-homogeneous set are not C-homogeneous", C);
            } else if (constant(y)) {
                const LevelColouring& lv = levels.at(y.front());
                if (!homogeneous_under(h, dim, [&](const Tuple& s) { return level_value(lv, s); }))
                    fail(rep, h, "D-homogeneous set inside a fibre is not level-homogeneous", C);
            } else {
                fail(rep, h, "D-homogeneous set with mixed f-pattern", C);
            }
        });
        ++rep.sources;
    }
}

void transfer_km(const ReductionConfig& cfg, Nat R, const TransferOptions& opt, TransferReport& rep) {
    const unsigned d = cfg.d;
    if (d < 2) throw InvalidArgument("KM compression needs d >= 2");
    const TupleDomain src(d, 0, cfg.f(R));
    std::vector<Nat> radix;
    src.for_each([&](const Tuple& y, std::size_t) { radix.push_back(std::min(y.front(), opt.value_cap) + 1); });
    const LevelFamily levels = opt.levels ? *opt.levels : km_searched_levels(cfg, 0, R, opt.level_search);
    rep.levels_verified = levels.all_verified();
    SourceEnumerator it(radix, opt);
    rep.sampled = it.sampled();
    std::vector<Nat> digits;
    while (it.next(digits)) {
        KmColouring D(src);
        for (std::size_t pos = 0; pos < digits.size(); ++pos) D.set(pos, digits[pos]);
        const KmColouring C = compress_km(D, cfg, levels, 0, R);
        for_each_large_subset(0, R, d + 3, [&](const Tuple& h) {
            ++rep.cases;
            if (!is_min_homogeneous(C, h)) return;
            ++rep.premises;
            const Tuple rest(h.begin() + 1, h.end());
            const Tuple y = images(cfg.f, rest);
            if (strictly_increasing(y)) {
                if (!is_min_homogeneous(D, y))
                    fail(rep, h, "f-images of H minus its minimum are not D-min-homogeneous", D);
            } else if (constant(y)) {
                const LevelColouring& lv = levels.at(y.front());
                if (!min_homogeneous_under(rest, d, [&](const Tuple& s) { return level_value(lv, s); }))
                    fail(rep, h, "H minus its minimum is not level-min-homogeneous", D);
            } else {
                fail(rep, h, "H minus its minimum has a mixed f-pattern", D);
            }
        });
        ++rep.sources;
    }
}

}  // namespace

TransferReport transfer_test(Kind kind, const ReductionConfig& cfg, Nat R, const TransferOptions& opt) {
    TransferReport rep;
    rep.kind = kind;
    switch (kind) {
        case Kind::AR: transfer_ar(cfg, R, opt, rep); break;
        case Kind::PH: transfer_ph(cfg, R, opt, rep); break;
        case Kind::KM: transfer_km(cfg, R, opt, rep); break;
    }
    return rep;
}

}  // namespace rtl
