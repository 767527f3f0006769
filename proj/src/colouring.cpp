#include "rtl/colouring.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "rtl/errors.hpp"
#include "rtl/kernels.hpp"

namespace rtl {

std::size_t binomial(Nat n, Nat k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (Nat i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::size_t>::max()) {
            throw ResourceError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
        }
    }
    return static_cast<std::size_t>(acc);
}

TupleDomain::TupleDomain(unsigned dim, Nat lo, Nat hi)
    : dim_(dim), lo_(lo), hi_(hi), points_(hi >= lo ? hi - lo + 1 : 0) {
    if (dim == 0) throw InvalidArgument("tuple domains need dimension >= 1");
    if (points_ > (Nat{1} << 24)) throw ResourceError("tuple domain has too many points");
    size_ = binomial(points_, dim_);
    binom_.resize((points_ + 1) * (dim_ + 1));
    for (Nat n = 0; n <= points_; ++n) {
        for (Nat k = 0; k <= dim_; ++k) {
            std::size_t v = 0;
            if (k == 0) v = 1;
            else if (n > 0) v = binom_[(n - 1) * (dim_ + 1) + k - 1] + binom_[(n - 1) * (dim_ + 1) + k];
            binom_[n * (dim_ + 1) + k] = v;
        }
    }
}

bool TupleDomain::contains(std::span<const Nat> t) const noexcept {
    if (t.size() != dim_) return false;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < lo_ || t[k] > hi_) return false;
        if (k > 0 && t[k] <= t[k - 1]) return false;
    }
    return true;
}

std::size_t TupleDomain::rank(std::span<const Nat> t) const {
    if (!contains(t)) throw InvalidArgument("tuple outside its domain");
    // Lexicographic rank through the complement count.
    std::size_t r = size_ - 1;
    for (unsigned k = 0; k < dim_; ++k) r -= choose(points_ - 1 - (t[k] - lo_), dim_ - k);
    return r;
}

Tuple TupleDomain::unrank(std::size_t r) const {
    if (r >= size_) throw InvalidArgument("rank outside its domain");
    Tuple t(dim_);
    Nat v = 0;
    for (unsigned k = 0; k < dim_; ++k) {
        while (true) {
            std::size_t block = choose(points_ - 1 - v, dim_ - 1 - k);
            if (r < block) break;
            r -= block;
            ++v;
        }
        t[k] = lo_ + v;
        ++v;
    }
    return t;
}

std::optional<Tuple> TupleDomain::first() const {
    if (size_ == 0) return std::nullopt;
    Tuple t(dim_);
    for (unsigned k = 0; k < dim_; ++k) t[k] = lo_ + k;
    return t;
}

bool TupleDomain::next(Tuple& t) const noexcept {
    for (unsigned k = dim_; k-- > 0;) {
        const Nat limit = hi_ - (dim_ - 1 - k);
        if (t[k] < limit) {
            ++t[k];
            for (unsigned j = k + 1; j < dim_; ++j) t[j] = t[j - 1] + 1;
            return true;
        }
    }
    return false;
}

ColourTable::ColourTable(TupleDomain domain, unsigned width)
    : domain_(std::move(domain)), width_(width), values_(domain_.size() * width, 0) {
    if (width == 0) throw InvalidArgument("colour tables need width >= 1");
}

void ColourTable::set(std::size_t rank, std::span<const std::uint32_t> value) {
    if (value.size() != width_) throw InvalidArgument("colour value has the wrong width");
    std::copy(value.begin(), value.end(), values_.begin() + static_cast<std::ptrdiff_t>(rank * width_));
}

void ColourTable::set(std::size_t rank, std::span<const Nat> value) {
    if (value.size() != width_) throw InvalidArgument("colour value has the wrong width");
    for (unsigned k = 0; k < width_; ++k) {
        if (value[k] > std::numeric_limits<std::uint32_t>::max()) throw ResourceError("colour value exceeds 32 bits");
        values_[rank * width_ + k] = static_cast<std::uint32_t>(value[k]);
    }
}

PhColouring::PhColouring(TupleDomain domain, Nat colours) : table_(std::move(domain), 1), colours_(colours) {
    if (colours == 0 && table_.domain().size() > 0) throw InvalidArgument("a nonempty PH colouring needs a colour");
}

void PhColouring::set(std::size_t rank, Nat colour) {
    if (colour >= colours_) throw InvalidArgument("colour out of range");
    const Nat v[1] = {colour};
    table_.set(rank, std::span<const Nat>(v));
}

void KmColouring::set(std::size_t rank, Nat v) {
    const Nat value[1] = {v};
    table_.set(rank, std::span<const Nat>(value));
}

std::string_view to_string(Kind k) noexcept {
    switch (k) {
        case Kind::AR: return "AR";
        case Kind::PH: return "PH";
        case Kind::KM: return "KM";
    }
    return "?";
}

Kind parse_kind(std::string_view text) {
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "AR") return Kind::AR;
    if (up == "PH") return Kind::PH;
    if (up == "KM") return Kind::KM;
    throw InvalidArgument("unknown kind '" + std::string(text) + "'");
}

Nat Params::lo() const noexcept {
    switch (kind) {
        case Kind::AR: return 0;
        case Kind::PH: return m;
        case Kind::KM: return a;
    }
    return 0;
}

bool componentwise_leq(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw InvalidArgument("componentwise comparison of tuples with different widths");
    return simd::leq_all(a, b);
}

bool is_limited(const ArColouring& c, const ParamFunction& f) {
    bool ok = true;
    c.domain().for_each([&](const Tuple& t, std::size_t r) {
        if (!ok) return;
        const Nat bound = sat_add(f(t.back()), 1);
        for (std::uint32_t v : c.value(r)) {
            if (v > bound) ok = false;
        }
    });
    return ok;
}

bool is_regressive(const KmColouring& c, const ParamFunction& f) {
    bool ok = true;
    c.domain().for_each([&](const Tuple& t, std::size_t r) {
        if (ok && c.value(r) > f(t.front())) ok = false;
    });
    return ok;
}

std::optional<Tuple> find_adjacent_pair(const ArColouring& c) {
    const TupleDomain& dom = c.domain();
    const unsigned d = dom.dim();
    TupleDomain wide(d + 1, dom.lo(), dom.hi());
    auto x = wide.first();
    if (!x) return std::nullopt;
    do {
        std::span<const Nat> all(*x);
        const auto left = c.value(all.first(d));
        const auto right = c.value(all.last(d));
        if (simd::leq_all(left, right)) return x;
    } while (wide.next(*x));
    return std::nullopt;
}

Nat ph_required_size(const ParamFunction& f, Nat h) { return std::max<Nat>(1, f(h)); }

namespace {

// Calls fn(subset) for every k-subset of `pool` (as index combinations), stops when fn returns false.
template <class F>
bool for_each_subset(std::span<const Nat> pool, unsigned k, F&& fn) {
    if (k > pool.size()) return true;
    std::vector<std::size_t> idx(k);
    for (unsigned j = 0; j < k; ++j) idx[j] = j;
    Tuple pick(k);
    while (true) {
        for (unsigned j = 0; j < k; ++j) pick[j] = pool[idx[j]];
        if (!fn(static_cast<const Tuple&>(pick))) return false;
        int j = static_cast<int>(k) - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == pool.size() - k + static_cast<std::size_t>(j)) --j;
        if (j < 0) return true;
        ++idx[static_cast<std::size_t>(j)];
        for (auto i = static_cast<std::size_t>(j) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

class HomogeneousSearch {
public:
    HomogeneousSearch(const PhColouring& c, Nat target) : c_(c), d_(c.domain().dim()), target_(target) {}

    void start(Nat h) {
        if (d_ == 1) {
            const Nat single[1] = {h};
            colour_ = c_.value(std::span<const Nat>(single));
        }
    }

    bool extend(Tuple& chosen) {
        if (chosen.size() == target_) return true;
        const Nat hi = c_.domain().hi();
        const Nat need = target_ - chosen.size();
        for (Nat e = chosen.back() + 1; e <= hi && hi - e + 1 >= need; ++e) {
            if (!compatible(chosen, e)) continue;
            chosen.push_back(e);
            if (extend(chosen)) return true;
            chosen.pop_back();
        }
        return false;
    }

private:
    bool compatible(const Tuple& chosen, Nat e) {
        if (chosen.size() + 1 < d_) return true;
        Tuple with(chosen);
        if (chosen.size() + 1 == d_) {
            with.push_back(e);
            colour_ = c_.value(with);
            return true;
        }
        Tuple subset(d_);
        return for_each_subset(chosen, d_ - 1, [&](const Tuple& s) {
            std::copy(s.begin(), s.end(), subset.begin());
            subset.back() = e;
            return c_.value(subset) == colour_;
        });
    }

    const PhColouring& c_;
    unsigned d_;
    Nat target_;
    std::uint32_t colour_ = 0;
};

class MinHomogeneousSearch {
public:
    MinHomogeneousSearch(const KmColouring& c, Nat target) : c_(c), d_(c.domain().dim()), target_(target) {}

    bool extend(Tuple& chosen, Nat from) {
        if (chosen.size() == target_) return true;
        const Nat hi = c_.domain().hi();
        const Nat need = target_ - chosen.size();
        for (Nat e = from; e <= hi && hi - e + 1 >= need; ++e) {
            chosen.push_back(e);
            if (compatible(chosen) && extend(chosen, e + 1)) return true;
            chosen.pop_back();
        }
        return false;
    }

private:
    // The newest element is chosen.back(). Every d-subset containing it must
    // match the subset formed by its minimum and the d-1 elements following it.
    bool compatible(const Tuple& chosen) const {
        if (d_ == 1) return true;
        const std::size_t q = chosen.size() - 1;
        Tuple subset(d_), ref(d_);
        for (std::size_t k = 0; k + d_ - 1 <= q; ++k) {
            for (unsigned j = 0; j < d_; ++j) ref[j] = chosen[k + j];
            const std::uint32_t want = c_.value(ref);
            std::span<const Nat> middle(chosen.data() + k + 1, q - k - 1);
            bool ok = for_each_subset(middle, d_ - 2, [&](const Tuple& s) {
                subset[0] = chosen[k];
                std::copy(s.begin(), s.end(), subset.begin() + 1);
                subset.back() = chosen[q];
                return c_.value(subset) == want;
            });
            if (!ok) return false;
        }
        return true;
    }

    const KmColouring& c_;
    unsigned d_;
    Nat target_;
};

}  // namespace

std::optional<Tuple> find_homogeneous(const PhColouring& c, const ParamFunction& f) {
    const TupleDomain& dom = c.domain();
    if (dom.points() == 0) return std::nullopt;
    for (Nat h = dom.lo(); h <= dom.hi(); ++h) {
        const Nat s = ph_required_size(f, h);
        if (s > dom.hi() - h + 1) continue;
        if (s <= dom.dim()) {
            // At most one d-subset, so any set of this size is homogeneous.
            Tuple t(s);
            for (Nat k = 0; k < s; ++k) t[k] = h + k;
            return t;
        }
        Tuple chosen{h};
        HomogeneousSearch search(c, s);
        search.start(h);
        if (search.extend(chosen)) return chosen;
    }
    return std::nullopt;
}

std::optional<Tuple> find_min_homogeneous(const KmColouring& c, Nat m) {
    const TupleDomain& dom = c.domain();
    if (m == 0) return Tuple{};
    if (dom.points() < m) return std::nullopt;
    Tuple chosen;
    MinHomogeneousSearch search(c, m);
    if (search.extend(chosen, dom.lo())) return chosen;
    return std::nullopt;
}

bool is_homogeneous(const PhColouring& c, std::span<const Nat> h) {
    std::optional<std::uint32_t> colour;
    return for_each_subset(h, c.domain().dim(), [&](const Tuple& s) {
        const std::uint32_t v = c.value(s);
        if (!colour) colour = v;
        return *colour == v;
    });
}

bool is_min_homogeneous(const KmColouring& c, std::span<const Nat> h) {
    const unsigned d = c.domain().dim();
    for (std::size_t k = 0; k < h.size(); ++k) {
        std::optional<std::uint32_t> colour;
        bool ok = for_each_subset(h.subspan(k + 1), d - 1, [&](const Tuple& s) {
            Tuple full{h[k]};
            full.insert(full.end(), s.begin(), s.end());
            const std::uint32_t v = c.value(full);
            if (!colour) colour = v;
            return *colour == v;
        });
        if (!ok) return false;
    }
    return true;
}

Kind kind_of(const Colouring& c) noexcept { return static_cast<Kind>(c.index()); }

const TupleDomain& domain_of(const Colouring& c) noexcept {
    return std::visit([](const auto& col) -> const TupleDomain& { return col.domain(); }, c);
}

bool verify_certificate(const Certificate& cert) {
    const Params& p = cert.params;
    if (kind_of(cert.colouring) != p.kind) return false;
    const TupleDomain expected(p.d, p.lo(), cert.R);
    if (!(domain_of(cert.colouring) == expected)) return false;
    switch (p.kind) {
        case Kind::AR: {
            const auto& c = std::get<ArColouring>(cert.colouring);
            return c.width() == p.r && is_limited(c, p.f) && !find_adjacent_pair(c);
        }
        case Kind::PH: {
            const auto& c = std::get<PhColouring>(cert.colouring);
            return c.colours() <= p.r && !find_homogeneous(c, p.f);
        }
        case Kind::KM: {
            const auto& c = std::get<KmColouring>(cert.colouring);
            return is_regressive(c, p.f) && !find_min_homogeneous(c, p.m);
        }
    }
    return false;
}

std::string to_text(const Colouring& c) {
    std::ostringstream out;
    const TupleDomain& dom = domain_of(c);
    const ColourTable& table = std::visit([](const auto& col) -> const ColourTable& { return col.table(); }, c);
    Nat r = table.width();
    if (const auto* ph = std::get_if<PhColouring>(&c)) r = ph->colours();
    out << to_string(kind_of(c)) << ' ' << dom.dim() << ' ' << dom.lo() << ' ' << dom.hi() << ' ' << r << '\n';
    dom.for_each([&](const Tuple& t, std::size_t rank) {
        for (std::size_t k = 0; k < t.size(); ++k) out << (k ? " " : "") << t[k];
        out << " :";
        for (std::uint32_t v : table.at(rank)) out << ' ' << v;
        out << '\n';
    });
    return out.str();
}

namespace {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool done() const noexcept { return pos_ >= text_.size(); }

    std::vector<std::string_view> line() {
        if (done()) fail("unexpected end of colouring text");
        const std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) fail("missing final newline");
        std::string_view l = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_no_;
        std::vector<std::string_view> tokens;
        std::size_t start = 0;
        while (start <= l.size()) {
            std::size_t sp = l.find(' ', start);
            if (sp == std::string_view::npos) sp = l.size();
            if (sp == start) fail("empty token");
            tokens.push_back(l.substr(start, sp - start));
            start = sp + 1;
        }
        return tokens;
    }

    Nat number(std::string_view tok) const {
        Nat v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail("bad number '" + std::string(tok) + "'");
        if (tok.size() > 1 && tok[0] == '0') fail("non-canonical number '" + std::string(tok) + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw InvalidArgument("colouring text line " + std::to_string(line_no_) + ": " + why);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

}  // namespace

Colouring parse_colouring(std::string_view text) {
    LineReader in(text);
    auto header = in.line();
    if (header.size() != 5) in.fail("header needs `kind d lo hi r`");
    const Kind kind = parse_kind(header[0]);
    if (header[0] != to_string(kind)) in.fail("kind must be upper case");
    const Nat d = in.number(header[1]);
    const Nat lo = in.number(header[2]);
    const Nat hi = in.number(header[3]);
    const Nat r = in.number(header[4]);
    if (d == 0 || d > 64) in.fail("dimension out of range");
    if (hi + 1 < lo) in.fail("hi below lo - 1");
    TupleDomain dom(static_cast<unsigned>(d), lo, hi);

    Colouring result = [&]() -> Colouring {
        switch (kind) {
            case Kind::AR:
                if (r == 0 || r > 4096) in.fail("AR width out of range");
                return ArColouring(dom, static_cast<unsigned>(r));
            case Kind::PH: return PhColouring(dom, r);
            case Kind::KM:
                if (r != 1) in.fail("KM colourings have value width 1");
                return KmColouring(dom);
        }
        in.fail("unknown kind");
    }();

    const unsigned width = kind == Kind::AR ? static_cast<unsigned>(r) : 1;
    auto t = dom.first();
    std::size_t rank = 0;
    std::vector<Nat> value(width);
    if (t) {
        do {
            auto tokens = in.line();
            if (tokens.size() != d + 1 + width || tokens[d] != ":") in.fail("malformed tuple line");
            for (Nat k = 0; k < d; ++k) {
                if (in.number(tokens[k]) != (*t)[k]) in.fail("tuples out of lexicographic order");
            }
            for (unsigned k = 0; k < width; ++k) value[k] = in.number(tokens[d + 1 + k]);
            std::visit(
                [&](auto& col) {
                    using T = std::decay_t<decltype(col)>;
                    if constexpr (std::is_same_v<T, ArColouring>) col.set(rank, std::span<const Nat>(value));
                    else col.set(rank, value[0]);
                },
                result);
            ++rank;
        } while (dom.next(*t));
    }
    if (!in.done()) in.fail("trailing lines");
    return result;
}

}  // namespace rtl
