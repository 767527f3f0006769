#include <doctest.h>

#include "rtl/bounds.hpp"
#include "rtl/errors.hpp"
#include "rtl/fnspec.hpp"

using namespace rtl;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }

ParamFunction square() {
    return ParamFunction("square", [](Nat k) { return sat_mul(k, k); });
}

// Two independent scans: c = least with H(c) >= i, then least j with l_c(j) >= i.
Nat scan_sharpen(const IndexedFamily& l, const ParamFunction& H, Nat i) {
    Nat c = 0;
    while (H(c) < i) ++c;
    Nat j = 0;
    while (l(c, j) < i) ++j;
    return j;
}

}  // namespace

TEST_CASE("AR upper bound") {
    CHECK(ar_upper_bound(1, 2, 1) == 16);
    CHECK(ar_upper_bound(0, 3, 2) == 27);
    CHECK(ar_upper_bound(2, 2, 1) == 65536);
    CHECK_THROWS_AS(ar_upper_bound(4, 3, 2), ResourceError);
}

TEST_CASE("PH upper bound") {
    CHECK(ph_upper_bound(1, 3, 1, 2) == 7);
    CHECK(ph_upper_bound(2, 4, 1, 2) == (BigNat(1) << 64) + 1);
    CHECK_THROWS_AS(ph_upper_bound(1, 2, 2, 1), GuardViolation);
    CHECK_THROWS_AS(ph_upper_bound(0, 5, 0, 1), GuardViolation);
    const auto u = ph_upper_bound_unguarded(1, 2, 2, 1);
    CHECK_FALSE(u.guarded);
    CHECK(u.value == 4);
    CHECK(ph_upper_bound_unguarded(1, 3, 1, 2).guarded);
}

TEST_CASE("KM upper bound") {
    CHECK(km_upper_bound(2, 11, 0, 2) == boost::multiprecision::pow(BigNat(11), 8));
    CHECK_THROWS_AS(km_upper_bound(3, 12, 1, 1), ResourceError);
    CHECK_THROWS_AS(km_upper_bound(2, 5, 0, 1), GuardViolation);
    CHECK_THROWS_AS(km_upper_bound(1, 50, 0, 1), GuardViolation);
    const auto u = km_upper_bound_unguarded(2, 5, 0, 1);
    CHECK_FALSE(u.guarded);
    CHECK(u.value == 625);
}

TEST_CASE("threshold functions") {
    // H_0^{-1}(8) = 8 and 2_8(0) already exceeds 8.
    CHECK(threshold_f_alpha(ThresholdVariant::diag_log, 0, Ordinal(), 8, 1000) == 0);
    CHECK(threshold_f_alpha(ThresholdVariant::ar_root, 1, ord("w"), 17, 1000) == 2);
    CHECK(threshold_f_alpha(ThresholdVariant::ph_div, 0, Ordinal(), 12, 1000) == scaled_div(iter_log(1, 12), 12));
    CHECK(threshold_f_alpha(ThresholdVariant::ph_div, 1, ord("w"), 65536, 1000) == scaled_div(iter_log(2, 65536), 32768));
    for (auto v : {ThresholdVariant::ar_root, ThresholdVariant::ph_div, ThresholdVariant::diag_log})
        CHECK(parse_threshold_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_threshold_variant("root"), InvalidArgument);
    CHECK_THROWS_AS(threshold_f_alpha(ThresholdVariant::ar_root, 1, ord("w^w^w"), 1000, 3), BudgetExceeded);
}

// A larger alpha gives a slower H^{-1}, hence a weaker root, divisor or iteration count.
TEST_CASE("thresholds rise with alpha") {
    const std::vector<Ordinal> chain{Ordinal(), ord("1"), ord("w"), ord("w*2"), ord("w^2")};
    for (auto v : {ThresholdVariant::ar_root, ThresholdVariant::ph_div, ThresholdVariant::diag_log})
        for (Nat i : {100u, 5000u, 100000u, 4000000u})
            for (std::size_t k = 0; k + 1 < chain.size(); ++k)
                CHECK(threshold_f_alpha(v, 1, chain[k + 1], i, 10'000'000) >= threshold_f_alpha(v, 1, chain[k], i, 10'000'000));
}

TEST_CASE("indexed families") {
    const auto mul = IndexedFamily::mul();
    CHECK(mul(3, 4) == 12);
    CHECK(mul(0, 5) == 5);
    CHECK(IndexedFamily::tower_pow(1)(2, 3) == 512);
    CHECK(IndexedFamily::tower_lin(1)(2, 3) == 64);
    CHECK(IndexedFamily::identity()(9, 4) == 4);
    for (const auto& l : {mul, IndexedFamily::tower_pow(1), IndexedFamily::tower_lin(2), IndexedFamily::identity()})
        CHECK(check_monotone(l, 6, 40));
    const IndexedFamily bad("bad", [](Nat c, Nat i) { return c > 2 ? 0 : i; });
    CHECK_FALSE(check_monotone(bad, 4, 4));
    CHECK(mul.member(3)(5) == 15);
}

TEST_CASE("sharpening composition") {
    const auto mul = IndexedFamily::mul();
    CHECK(sharpening_compose(mul, ParamFunction::power_of_two(), 9) == 3);
    for (Nat i = 0; i < 200; ++i) {
        CHECK(sharpening_compose(IndexedFamily::identity(), ParamFunction::power_of_two(), i) == i);
        CHECK(sharpening_compose(mul, ParamFunction::power_of_two(), i) == scan_sharpen(mul, ParamFunction::power_of_two(), i));
        CHECK(sharpening_compose(IndexedFamily::tower_lin(1), ParamFunction::identity(), i) ==
              scan_sharpen(IndexedFamily::tower_lin(1), ParamFunction::identity(), i));
    }
    CHECK(check_monotone(sharpened(IndexedFamily::identity(), ParamFunction::power_of_two()), 300));
    // Monotone l and H do not make h monotone: H^-1 steps up from 5 to 6 between 32 and 33.
    const auto h = sharpened(mul, ParamFunction::power_of_two());
    CHECK(h(32) == 7);
    CHECK(h(33) == 6);
    CHECK_FALSE(check_monotone(h, 300));
    CHECK(sharpened(mul, ParamFunction::identity()).name() == "sharpen(mul,id)");
    CHECK(family_inverse(mul, 3).name() == "inv:mul@3");
    CHECK(family_inverse(mul, 3)(10) == 4);
    CHECK(inverse_function(square()).name() == "inv:square");
    CHECK(inverse_function(square())(10) == 4);
}

TEST_CASE("tabulated grids") {
    TabulatedM M;
    CHECK(M.empty());
    M.set("id", {1, 2}, 7);
    CHECK(M.has("id", {1, 2}));
    CHECK(M.at("id", {1, 2}) == 7);
    CHECK_THROWS_AS(M.at("id", {2, 2}), MissingEntry);
    CHECK_THROWS_AS(M.function("id"), MissingEntry);
    M.register_function(ParamFunction::identity());
    CHECK(M.function("id")(3) == 3);
}

TEST_CASE("upper bounds probe on a toy grid") {
    const auto u = square();
    UpperGrid h;
    for (Nat d = 1; d <= 3; ++d)
        for (Nat x = 0; x <= 4; ++x) h[{d, x}] = d + x + 2;
    std::vector<ParamFunction> fs{inverse_function(u), ParamFunction::identity(), ParamFunction::halve()};
    for (const auto& [p, v] : h) {
        (void)p;
        fs.push_back(ParamFunction::constant(v));
    }
    const auto M = toy_upper_grid(fs, h);
    const auto rep = probe_upper_bounds_lemma(M, u, h);
    CHECK(rep.checks > h.size());
    CHECK(rep.violations.empty());
    CHECK_THROWS_AS(probe_upper_bounds_lemma(TabulatedM{}, u, h), MissingEntry);
    CHECK_THROWS_AS(probe_upper_bounds_lemma(M, u, UpperGrid{}), MissingEntry);
}

TEST_CASE("upper bounds probe catches a corrupted entry") {
    const auto u = square();
    UpperGrid h{{{1, 1}, 4}};
    auto M = toy_upper_grid({inverse_function(u), ParamFunction::constant(4)}, h);
    M.set("const:4", {1, 1}, 100);
    CHECK_FALSE(probe_upper_bounds_lemma(M, u, h).violations.empty());
}

TEST_CASE("upper bounds probe on adjacent Ramsey data") {
    const auto u = square();
    UpperGrid h;
    for (Nat x = 0; x <= 3; ++x) h[{1, x}] = 4;
    const auto M = ar_upper_grid({inverse_function(u), ParamFunction::constant(4), ParamFunction::halve()}, h, SearchConfig{});
    for (Nat x = 0; x <= 3; ++x) CHECK(M.at("const:4", {1, x}) == 4 + x + 2);
    const auto rep = probe_upper_bounds_lemma(M, u, h);
    CHECK(rep.violations.empty());
}

TEST_CASE("sharpening probe") {
    const auto l = IndexedFamily::mul();
    const auto H = ParamFunction::power_of_two();
    const std::vector<Nat> xs{0, 1, 2, 3, 4, 5};
    const auto M = toy_sharpening_grid(l, H, xs);
    const auto rep = probe_proof_sharpening(M, l, H, xs);
    CHECK(rep.checks > 0);
    CHECK(rep.violations.empty());
    CHECK(probe_proof_sharpening(M, l, H, {0}).checks == 0);

    auto bad = M;
    const std::string h = sharpened(l, H).name();
    // x = 3 has M_h >= H(3), so the corruption goes to x = 5 where the hypothesis holds.
    CHECK(M.at(h, {3, 3, 3}) >= H(3));
    bad.set(family_inverse(l, 5).name(), {5, 5, 5}, M.at(h, {5, 5, 5}) + 1);
    CHECK_FALSE(probe_proof_sharpening(bad, l, H, xs).violations.empty());
}

TEST_CASE("sharpening probe on adjacent Ramsey data") {
    const auto l = IndexedFamily::mul();
    const auto H = ParamFunction::power_of_two();
    const std::vector<Nat> xs{1, 2, 3};
    const auto M = ar_sharpening_grid(l, H, xs, SearchConfig{});
    CHECK(probe_proof_sharpening(M, l, H, xs).violations.empty());
}
