#include <doctest.h>

#include <random>

#include "rtl/errors.hpp"
#include "rtl/ordinal.hpp"

using namespace rtl;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }

// The defining clauses applied one step at a time (every clause is a tail call).
Nat naive_hardy(Ordinal a, Nat x) {
    while (!a.is_zero()) {
        if (a.is_successor()) {
            a = a.limit_part() + Ordinal::natural(a.finite_part() - 1);
            ++x;
        } else {
            a = fund_seq(a, x);
        }
    }
    return x;
}

Ordinal random_ordinal(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> terms(0, 3), coef(1, 3);
    if (depth == 0) return Ordinal::natural(terms(rng));
    Ordinal out;
    const int n = terms(rng);
    std::vector<Ordinal> exps;
    for (int k = 0; k < n; ++k) exps.push_back(random_ordinal(rng, depth - 1));
    std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return a > b; });
    for (const auto& e : exps) out = out + Ordinal::omega_power(e, coef(rng));
    return out;
}

}  // namespace

TEST_CASE("comparison") {
    CHECK(Ordinal() < Ordinal::omega());
    CHECK(ord("w*2") < ord("w^2"));
    CHECK(ord("w^w") > ord("w^3"));
    CHECK(ord("w^w*2+w*3+5") == ord("w^w*2+w*3+5"));
    CHECK(ord("w+1") > ord("w"));
    CHECK(ord("5") < ord("w"));
    CHECK(ord("3") + ord("w") == ord("w"));
    CHECK(ord("w") + ord("3") == ord("w+3"));
    CHECK(ord("w^2+w") + ord("w^2") == ord("w^2*2"));
}

TEST_CASE("classification") {
    CHECK(Ordinal().is_zero());
    CHECK(ord("w+2").is_successor());
    CHECK(ord("w^2").is_limit());
    CHECK(ord("w+2").finite_part() == 2);
    CHECK(ord("w+2").limit_part() == ord("w"));
    CHECK(ord("7").as_natural() == 7);
    CHECK_FALSE(ord("w").as_natural().has_value());
}

TEST_CASE("omega towers") {
    CHECK(omega_tower(1) == ord("w"));
    CHECK(omega_tower(2) == ord("w^w"));
    CHECK(omega_tower(3) == ord("w^w^w"));
    CHECK(omega_tower(0) == ord("1"));
    CHECK_THROWS_AS(omega_tower(10, 5), ResourceError);
}

TEST_CASE("fundamental sequences") {
    CHECK(fund_seq(ord("w"), 5) == ord("5"));
    CHECK(fund_seq(ord("w^2"), 3) == ord("w*3"));
    CHECK(fund_seq(ord("w^w"), 2) == ord("w^2"));
    CHECK(fund_seq(ord("w^2+w"), 4) == ord("w^2+4"));
    CHECK(fund_seq(Epsilon0{}, 2) == ord("w^w"));
    CHECK(fund_seq(Epsilon0{}, 3) == omega_tower(3));
    CHECK_THROWS_AS(fund_seq(Ordinal(), 1), InvalidArgument);
    CHECK_THROWS_AS(fund_seq(ord("w+1"), 1), InvalidArgument);
}

TEST_CASE("fundamental sequences are below and monotone") {
    for (const char* s : {"w", "w^2", "w^w", "w^w*2+w", "w^(w+1)", "w^w^w", "w^3*2+w^2"}) {
        const auto a = ord(s);
        for (Nat n = 0; n < 8; ++n) {
            CHECK(fund_seq(a, n) < a);
            CHECK(fund_seq(a, n) <= fund_seq(a, n + 1));
        }
    }
}

TEST_CASE("hardy examples") {
    CHECK(hardy(Ordinal(), 9, 100) == 9);
    CHECK(hardy(ord("w"), 6, 100) == 12);
    CHECK(hardy(ord("w*2"), 3, 100) == 12);
    CHECK(hardy(ord("w+3"), 2, 100) == 10);
    CHECK(hardy(ord("w^2"), 2, 1000) == 8);
    CHECK_THROWS_AS(hardy(ord("w^w"), 6, 10), BudgetExceeded);
}

TEST_CASE("hardy matches naive recursion") {
    for (const char* s : {"0", "4", "w", "w+1", "w*2", "w*3+2", "w^2", "w^2+w", "w^2*2", "w^3", "w^w"})
        for (Nat x = 0; x <= 4; ++x) {
            const auto a = ord(s);
            Nat want = 0;
            try {
                want = hardy(a, x, 10'000'000);
            } catch (const Error&) {
                continue;
            }
            if (want > 1'000'000) continue;
            CHECK(want == naive_hardy(a, x));
        }
}

TEST_CASE("hardy growth and monotonicity") {
    for (const char* s : {"0", "3", "w", "w+2", "w*2", "w^2", "w^2+w*2"}) {
        const auto a = ord(s);
        Nat prev = 0;
        for (Nat x = 0; x <= 8; ++x) {
            const Nat h = hardy(a, x, 10'000'000);
            CHECK(h >= x);
            CHECK(h >= prev);
            prev = h;
        }
    }
    const std::vector<Ordinal> probes{ord("0"), ord("1"), ord("w"), ord("w+1"), ord("w*2"), ord("w^2")};
    CHECK(hardy_monotonicity_violations(probes, {2, 3, 4, 5, 6}, 10'000'000).empty());
    // At x = 1 the hierarchy is not yet monotone: H_{w+1}(1) = 4 > H_{w^2}(1) = 2.
    const auto low = hardy_monotonicity_violations(probes, {1}, 10'000'000);
    REQUIRE_FALSE(low.empty());
    bool found = false;
    for (const auto& v : low) found = found || (v.smaller == ord("w+1") && v.larger == ord("w^2") && v.x == 1);
    CHECK(found);
}

TEST_CASE("hardy early stop") {
    const auto run = hardy_run(ord("w^w"), 5, 1000, 50);
    CHECK(run.reached);
    CHECK(run.value >= 50);
}

TEST_CASE("hardy inverse") {
    CHECK(hardy_inverse(Ordinal(), 5, 100) == 5);
    CHECK(hardy_inverse(ord("w"), 10, 100) == 5);
    CHECK(hardy_inverse(ord("w"), 11, 100) == 6);
    CHECK(hardy_inverse(ord("w"), 0, 100) == 0);
    CHECK(hardy_inverse(ord("w*2"), 12, 1000) == 3);
    for (const char* s : {"0", "w", "w*2", "w^2"})
        for (Nat x = 0; x <= 6; ++x) {
            const auto a = ord(s);
            CHECK(hardy_inverse(a, hardy(a, x, 10'000'000), 10'000'000) <= x);
        }
    CHECK(hardy_inverse(ord("w^w^w"), 1'000'000, 10'000'000) <= 4);
}

TEST_CASE("literal round trip") {
    CHECK(to_string(Ordinal()) == "0");
    CHECK(to_string(ord("w")) == "w");
    CHECK(to_string(ord("w^w*2+w*3+5")) == "w^w*2+w*3+5");
    CHECK(to_string(ord("w^(w+1)")) == "w^(w+1)");
    CHECK(parse_ordinal("w^w^w") == Ordinal::omega_power(ord("w^w")));
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_ordinal(rng, 3);
        CHECK(parse_ordinal(to_string(a)) == a);
    }
}

TEST_CASE("literal sums are ordinal sums") {
    CHECK(ord("1+w") == ord("w"));
    CHECK(ord("w+w^2") == ord("w^2"));
    CHECK(ord("w+w") == ord("w*2"));
}

TEST_CASE("malformed literals") {
    for (const char* s : {"", "w^", "w*0", "x", "w**2", "w^(w", "01", "w+"})
        CHECK_THROWS_AS(parse_ordinal(s), InvalidArgument);
}
