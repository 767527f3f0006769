#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "rtl/colouring.hpp"
#include "rtl/errors.hpp"

using namespace rtl;

namespace {

std::vector<std::uint32_t> u32(std::initializer_list<std::uint32_t> v) { return v; }

ArColouring scalar_ar(Nat R, const std::vector<Nat>& values) {
    ArColouring c(TupleDomain(1, 0, R), 1);
    for (std::size_t k = 0; k < values.size(); ++k) c.set(k, std::vector<Nat>{values[k]});
    return c;
}

// Lexicographically least pair (x, y), x < y, with C(x) <= C(y) componentwise; d = 1 only.
std::optional<Tuple> scan_pair(const ArColouring& c) {
    const Nat R = c.domain().hi();
    for (Nat x = 0; x <= R; ++x)
        for (Nat y = x + 1; y <= R; ++y)
            if (componentwise_leq(c.value(Tuple{x}), c.value(Tuple{y}))) return Tuple{x, y};
    return std::nullopt;
}

}  // namespace

TEST_CASE("tuple domain enumeration") {
    TupleDomain dom(3, 2, 7);
    CHECK(dom.size() == 20);
    CHECK(dom.points() == 6);
    const auto all = oracle::increasing_tuples(3, 2, 7);
    REQUIRE(all.size() == dom.size());
    std::size_t seen = 0;
    dom.for_each([&](const Tuple& t, std::size_t r) {
        CHECK(t == all[r]);
        CHECK(dom.rank(t) == r);
        CHECK(dom.unrank(r) == t);
        ++seen;
    });
    CHECK(seen == 20);
    CHECK(TupleDomain(2, 5, 4).size() == 0);
    CHECK_THROWS_AS(TupleDomain(0, 0, 3), InvalidArgument);
    CHECK_FALSE(dom.contains(Tuple{2, 2, 3}));
    CHECK_FALSE(dom.contains(Tuple{1, 2, 3}));
    CHECK(binomial(10, 3) == 120);
    CHECK_THROWS_AS(binomial(200, 100), ResourceError);
}

TEST_CASE("componentwise_leq") {
    CHECK_FALSE(componentwise_leq(u32({1, 0}), u32({0, 1})));
    CHECK(componentwise_leq(u32({0, 0}), u32({5, 7})));
    CHECK(componentwise_leq(u32({2, 3, 1}), u32({2, 3, 1})));
    CHECK_THROWS_AS(componentwise_leq(u32({1}), u32({1, 2})), InvalidArgument);
}

TEST_CASE("limitedness") {
    ArColouring zero(TupleDomain(2, 0, 4), 2);
    CHECK(is_limited(zero, ParamFunction::constant(0)));
    auto c = scalar_ar(3, {0, 0, 0, 5});
    CHECK_FALSE(is_limited(c, ParamFunction::identity()));
    c = scalar_ar(3, {0, 0, 0, 4});
    CHECK(is_limited(c, ParamFunction::identity()));
}

TEST_CASE("regressiveness") {
    KmColouring zero(TupleDomain(2, 0, 5));
    CHECK(is_regressive(zero, ParamFunction::identity()));
    KmColouring c(TupleDomain(2, 0, 5));
    c.set(c.domain().rank(Tuple{1, 5}), 2);
    CHECK_FALSE(is_regressive(c, ParamFunction::identity()));
    KmColouring e(TupleDomain(2, 0, 5));
    e.set(e.domain().rank(Tuple{3, 5}), 3);
    CHECK(is_regressive(e, ParamFunction::identity()));
}

TEST_CASE("adjacent pairs") {
    CHECK(find_adjacent_pair(scalar_ar(2, {1, 0, 0})) == Tuple{1, 2});
    CHECK(find_adjacent_pair(scalar_ar(4, {4, 3, 2, 1, 0})) == std::nullopt);
    ArColouring constant(TupleDomain(2, 0, 4), 1);
    CHECK(find_adjacent_pair(constant) == Tuple{0, 1, 2});
    // Windows are (x1..xd) and (x2..x{d+1}); any increasing (d+1)-tuple counts.
    ArColouring c(TupleDomain(2, 0, 3), 1);
    c.domain().for_each([&](const Tuple& t, std::size_t r) { c.set(r, std::vector<Nat>{t[0] == 0 ? 3u : t[0] == 1 ? 2u : 1u}); });
    const auto p = find_adjacent_pair(c);
    CHECK(p == std::nullopt);
}

TEST_CASE("adjacent pairs agree with a scan") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 300; ++k) {
        const Nat R = rng() % 6;
        ArColouring c(TupleDomain(1, 0, R), 2);
        for (std::size_t r = 0; r < c.domain().size(); ++r) c.set(r, std::vector<Nat>{rng() % 3, rng() % 3});
        CHECK(find_adjacent_pair(c) == scan_pair(c));
    }
}

TEST_CASE("homogeneous sets") {
    PhColouring one(TupleDomain(1, 2, 3), 1);
    CHECK(find_homogeneous(one, ParamFunction::identity()) == Tuple{2, 3});
    PhColouring any(TupleDomain(2, 0, 3), 2);
    const auto h = find_homogeneous(any, ParamFunction::constant(0));
    REQUIRE(h.has_value());
    CHECK(h->size() == 1);
    // Parity-of-sum colouring of pairs on {0..4}.
    PhColouring parity(TupleDomain(2, 0, 4), 2);
    parity.domain().for_each([&](const Tuple& t, std::size_t r) { parity.set(r, (t[0] + t[1]) % 2); });
    const auto w = find_homogeneous(parity, ParamFunction::constant(3));
    bool brute = false;
    for (const auto& s : oracle::increasing_tuples(3, 0, 4)) brute = brute || is_homogeneous(parity, s);
    CHECK(w.has_value() == brute);
    if (w) CHECK(is_homogeneous(parity, *w));
}

TEST_CASE("homogeneous results re-check") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const Nat R = 2 + rng() % 5;
        PhColouring c(TupleDomain(2, 0, R), 2);
        for (std::size_t r = 0; r < c.domain().size(); ++r) c.set(r, rng() % 2);
        const auto f = ParamFunction::constant(1 + rng() % 4);
        const auto h = find_homogeneous(c, f);
        bool brute = false;
        for (unsigned s = 1; s <= R + 1 && !brute; ++s)
            for (const auto& t : oracle::increasing_tuples(s, 0, R))
                if (t.size() >= ph_required_size(f, t.front()) && is_homogeneous(c, t)) brute = true;
        CHECK(h.has_value() == brute);
        if (h) {
            CHECK(is_homogeneous(c, *h));
            CHECK(h->size() >= ph_required_size(f, h->front()));
        }
    }
}

TEST_CASE("min-homogeneous sets") {
    KmColouring d1(TupleDomain(1, 4, 6));
    d1.set(0, 0);
    d1.set(1, 1);
    d1.set(2, 0);
    CHECK(find_min_homogeneous(d1, 3) == Tuple{4, 5, 6});
    KmColouring pairs(TupleDomain(2, 0, 5));
    pairs.domain().for_each([&](const Tuple& t, std::size_t r) { pairs.set(r, t[1] * 7 % 5); });
    CHECK(find_min_homogeneous(pairs, 2) == Tuple{0, 1});
    KmColouring by_max(TupleDomain(2, 0, 3));
    by_max.domain().for_each([&](const Tuple& t, std::size_t r) { by_max.set(r, t[1]); });
    const auto w = find_min_homogeneous(by_max, 3);
    bool brute = false;
    for (const auto& t : oracle::increasing_tuples(3, 0, 3)) brute = brute || is_min_homogeneous(by_max, t);
    CHECK(w.has_value() == brute);
    CHECK_FALSE(brute);
}

TEST_CASE("witness persistence under extension") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const Nat R = 3 + rng() % 3;
        ArColouring small(TupleDomain(1, 0, R), 1), big(TupleDomain(1, 0, R + 1), 1);
        for (Nat x = 0; x <= R + 1; ++x) {
            const Nat v = rng() % 4;
            if (x <= R) small.set(x, std::vector<Nat>{v});
            big.set(x, std::vector<Nat>{v});
        }
        if (find_adjacent_pair(small)) CHECK(find_adjacent_pair(big).has_value());
    }
}

TEST_CASE("certificate verification") {
    for (Nat k = 0; k <= 4; ++k) {
        std::vector<Nat> v;
        for (Nat x = 0; x <= k + 1; ++x) v.push_back(k + 1 - x);
        Certificate cert{Params{Kind::AR, 1, 1, 0, 0, ParamFunction::constant(k)}, k + 1, scalar_ar(k + 1, v)};
        CHECK(verify_certificate(cert));
    }
    Certificate over{Params{Kind::AR, 1, 1, 0, 0, ParamFunction::constant(0)}, 2, scalar_ar(2, {5, 4, 3})};
    CHECK_FALSE(verify_certificate(over));
    KmColouring km(TupleDomain(1, 2, 5));
    Certificate vacuous{Params{Kind::KM, 1, 1, 3, 2, ParamFunction::identity()}, 5, km};
    CHECK_FALSE(verify_certificate(vacuous));
    Certificate wrong_domain{Params{Kind::AR, 1, 1, 0, 0, ParamFunction::constant(3)}, 5, scalar_ar(4, {4, 3, 2, 1, 0})};
    CHECK_FALSE(verify_certificate(wrong_domain));
}

TEST_CASE("text format round trip") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 50; ++k) {
        ArColouring a(TupleDomain(2, 1, 1 + rng() % 5), 3);
        for (std::size_t r = 0; r < a.domain().size(); ++r) a.set(r, std::vector<Nat>{rng() % 9, rng() % 9, rng() % 9});
        const Colouring c = a;
        CHECK(parse_colouring(to_text(c)) == c);
        CHECK(to_text(parse_colouring(to_text(c))) == to_text(c));
    }
    PhColouring ph(TupleDomain(2, 0, 3), 2);
    ph.set(1, 1);
    CHECK(to_text(Colouring(ph)).substr(0, 11) == "PH 2 0 3 2\n");
    CHECK(parse_colouring(to_text(Colouring(ph))) == Colouring(ph));
    KmColouring km(TupleDomain(1, 0, 2));
    km.set(2, 7);
    CHECK(to_text(Colouring(km)) == "KM 1 0 2 1\n0 : 0\n1 : 0\n2 : 7\n");
}

TEST_CASE("malformed text") {
    CHECK_THROWS_AS(parse_colouring(""), InvalidArgument);
    CHECK_THROWS_AS(parse_colouring("XX 1 0 1 1\n0 : 0\n1 : 0\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_colouring("AR 1 0 1 1\n0 : 0\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_colouring("AR 1 0 1 1\n1 : 0\n0 : 0\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_colouring("AR 1 0 1 1\n0 : 0 1\n1 : 0\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_colouring("PH 1 0 1 2\n0 : 0\n1 : 2\n"), InvalidArgument);
}
