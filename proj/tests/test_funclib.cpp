#include <doctest.h>

#include <optional>

#include "rtl/errors.hpp"
#include "rtl/fnspec.hpp"
#include "rtl/funclib.hpp"

using namespace rtl;

namespace {

// Least j with 2_n(j) >= i, by materialising towers.
Nat scan_iter_log(Nat n, Nat i) {
    for (Nat j = 0;; ++j)
        if (tower(n, j) >= BigNat(i)) return j;
}

Nat scan_root_log(Nat n, Nat c, Nat i) {
    for (Nat j = 0;; ++j)
        if (tower(n, BigNat(j) == 0 ? BigNat(0) : boost::multiprecision::pow(BigNat(j), static_cast<unsigned>(c))) >= BigNat(i)) return j;
}

std::optional<Nat> scan_inverse(const ParamFunction& f, Nat i) {
    for (Nat j = 0; j <= kDefaultScanCap; ++j)
        if (f(j) >= i) return j;
    return std::nullopt;
}

}  // namespace

TEST_CASE("tower values") {
    CHECK(tower(0, 7) == 7);
    CHECK(tower(1, 3) == 8);
    CHECK(tower(3, 1) == 16);
    CHECK(tower(2, 3) == 256);
    CHECK(tower(4, 2) == BigNat(1) << 65536);
    CHECK_THROWS_AS(tower(6, 2), ResourceError);
    CHECK_THROWS_AS(tower(2, 40, 1u << 20), ResourceError);
    CHECK(tower_saturating(2, 2) == 16);
    CHECK(tower_saturating(3, 3) == kNatMax);
}

TEST_CASE("ceil_log2 and ceil_root") {
    CHECK(ceil_log2(0) == 0);
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(8) == 3);
    CHECK(ceil_log2(9) == 4);
    CHECK(ceil_root(17, 2) == 5);
    CHECK(ceil_root(16, 2) == 4);
    CHECK(ceil_root(kNatMax, 1) == kNatMax);
    CHECK(ceil_root(BigNat(1) << 100, 2) == BigNat(1) << 50);
    for (Nat c = 1; c <= 4; ++c)
        for (Nat i = 0; i <= 300; ++i) {
            const Nat j = ceil_root(i, c);
            CHECK(sat_pow(j, c) >= i);
            if (j > 0) CHECK(sat_pow(j - 1, c) < i);
        }
}

TEST_CASE("pseudo_inverse examples") {
    CHECK(pseudo_inverse(ParamFunction::identity(), 5) == 5);
    CHECK(pseudo_inverse(ParamFunction::power_of_two(), 9) == 4);
    CHECK_THROWS_AS(pseudo_inverse(ParamFunction::constant(3), 4), NotAttained);
    CHECK(pseudo_inverse(ParamFunction::constant(3), 3) == 0);
    CHECK(pseudo_inverse(ParamFunction::halve(), 7) == 14);
}

TEST_CASE("pseudo_inverse agrees with a linear scan") {
    for (const char* spec : {"id", "halve", "pow2", "logstar", "log:1", "log:2", "rootlog:1:2", "div:1:3"}) {
        const auto f = parse_function(spec);
        for (Nat i = 0; i <= 40; ++i) {
            const auto want = scan_inverse(f, i);
            if (want) CHECK(pseudo_inverse(f, i) == *want);
            else CHECK_THROWS_AS(pseudo_inverse(f, i), NotAttained);
        }
    }
}

TEST_CASE("Galois connection") {
    for (const char* spec : {"id", "halve", "pow2", "log:1", "rootlog:0:2"}) {
        const auto f = parse_function(spec);
        for (Nat i = 0; i <= 20; ++i)
            for (Nat j = 0; j <= 60; ++j) CHECK((pseudo_inverse(f, i) <= j) == (f(j) >= i));
    }
}

TEST_CASE("iter_log examples") {
    CHECK(iter_log(1, 8) == 3);
    CHECK(iter_log(1, 9) == 4);
    CHECK(iter_log(2, 17) == 3);
    CHECK(iter_log(0, 12) == 12);
    CHECK(iter_log(3, 0) == 0);
    CHECK(iter_log(3, 1) == 0);
}

TEST_CASE("iter_log agrees with tower scan") {
    for (Nat n = 0; n <= 3; ++n)
        for (Nat i = 0; i <= 2000; i += (i < 100 ? 1 : 37)) CHECK(iter_log(n, i) == scan_iter_log(n, i));
    CHECK(iter_log(3, 65536) == 2);
    CHECK(iter_log(3, 65537) == 3);
    CHECK(iter_log(1, kNatMax) == 64);
}

TEST_CASE("iter_log inverts tower") {
    for (Nat n = 0; n <= 3; ++n)
        for (Nat j = 0; j <= 4; ++j) {
            const BigNat t = tower(n, j);
            if (t > BigNat(kNatMax)) continue;
            CHECK(iter_log(n, static_cast<Nat>(t)) == j);
        }
}

TEST_CASE("log_star examples") {
    CHECK(log_star(0) == 0);
    CHECK(log_star(1) == 0);
    CHECK(log_star(2) == 1);
    CHECK(log_star(4) == 2);
    CHECK(log_star(16) == 3);
    CHECK(log_star(17) == 4);
    CHECK(log_star(65536) == 4);
    CHECK(log_star(65537) == 5);
    CHECK(log_star(kNatMax) == 5);
}

TEST_CASE("root_log examples and agreement") {
    CHECK(root_log(0, 2, 10) == 4);
    CHECK(root_log(1, 1, 9) == 4);
    CHECK(root_log(1, 2, 17) == 3);
    for (Nat n = 0; n <= 2; ++n)
        for (Nat c = 1; c <= 3; ++c)
            for (Nat i = 0; i <= 600; ++i) CHECK(root_log(n, c, i) == scan_root_log(n, c, i));
    for (Nat n = 0; n <= 3; ++n)
        for (Nat i = 0; i <= 1000; ++i) CHECK(root_log(n, 1, i) == iter_log(n, i));
}

TEST_CASE("scaled_div") {
    CHECK(scaled_div(7, 2) == 4);
    CHECK(scaled_div(6, 3) == 2);
    CHECK(scaled_div(5, 0) == 1);
    CHECK(scaled_div(0, 0) == 1);
    CHECK(scaled_div(0, 4) == 0);
}

TEST_CASE("purity") {
    const auto f = parse_function("rootlog:2:3");
    for (Nat i = 0; i < 500; i += 7) CHECK(f(i) == f(i));
    CHECK(iter_log(2, 123456) == iter_log(2, 123456));
}

TEST_CASE("monotonicity and reachability checks") {
    CHECK(check_monotone(ParamFunction::halve(), 1000));
    CHECK(check_monotone(ParamFunction::log_star(), 1000));
    const ParamFunction down("down", [](Nat i) { return i < 5 ? 5 - i : 0; }, false, false);
    CHECK_FALSE(check_monotone(down, 10));
    CHECK(check_reaches(ParamFunction::identity(), 77));
    CHECK_FALSE(check_reaches(ParamFunction::constant(2), 3, 1000));
}

TEST_CASE("built-in functions") {
    CHECK(ParamFunction::halve()(7) == 3);
    CHECK(ParamFunction::power_of_two()(10) == 1024);
    CHECK(ParamFunction::power_of_two()(64) == kNatMax);
    CHECK(ParamFunction::log_div(1, 2)(9) == 2);
    CHECK(ParamFunction::log_div(1, 0)(9) == 1);
    CHECK(ParamFunction::constant(4)(1000) == 4);
}

TEST_CASE("function spec parsing") {
    CHECK(parse_function("const:3")(100) == 3);
    CHECK(parse_function("log:2")(17) == 3);
    CHECK(parse_function("rootlog:1:2")(17) == 3);
    CHECK(parse_function("div:1:2")(9) == 2);
    CHECK(parse_function("id").name() == "id");
    CHECK(parse_function("falpha:ar-root:1:w").name() == "falpha:ar-root:1:w");
    CHECK_THROWS_AS(parse_function("log:"), InvalidArgument);
    CHECK_THROWS_AS(parse_function("const:01"), InvalidArgument);
    CHECK_THROWS_AS(parse_function("nope"), InvalidArgument);
    CHECK_THROWS_AS(parse_function("falpha:bad:1:w"), InvalidArgument);
    CHECK(parse_nat("0") == 0);
    CHECK(parse_nat("18446744073709551615") == kNatMax);
    CHECK_THROWS_AS(parse_nat("18446744073709551616"), InvalidArgument);
    CHECK_THROWS_AS(parse_nat("-1"), InvalidArgument);
    CHECK_THROWS_AS(parse_nat(""), InvalidArgument);
}
