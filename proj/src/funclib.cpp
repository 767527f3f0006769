#include "rtl/funclib.hpp"

#include <bit>
#include <utility>

#include "rtl/errors.hpp"

namespace rtl {

ParamFunction::ParamFunction(std::string name, Eval eval, bool monotone_hint, bool unbounded_hint)
    : name_(std::move(name)), eval_(std::move(eval)), monotone_hint_(monotone_hint), unbounded_hint_(unbounded_hint) {}

ParamFunction ParamFunction::identity() {
    return {"id", [](Nat i) { return i; }};
}

ParamFunction ParamFunction::constant(Nat k) {
    return {"const:" + std::to_string(k), [k](Nat) { return k; }, true, false};
}

ParamFunction ParamFunction::halve() {
    return {"halve", [](Nat i) { return i / 2; }};
}

ParamFunction ParamFunction::power_of_two() {
    return {"pow2", [](Nat i) { return i >= 64 ? kNatMax : Nat{1} << i; }};
}

ParamFunction ParamFunction::iter_log(Nat n) {
    return {"log:" + std::to_string(n), [n](Nat i) { return rtl::iter_log(n, i); }};
}

ParamFunction ParamFunction::root_log(Nat n, Nat c) {
    if (c == 0) throw InvalidArgument("root_log needs c >= 1");
    return {"rootlog:" + std::to_string(n) + ":" + std::to_string(c), [n, c](Nat i) { return rtl::root_log(n, c, i); }};
}

ParamFunction ParamFunction::log_star() {
    return {"logstar", [](Nat i) { return rtl::log_star(i); }};
}

ParamFunction ParamFunction::log_div(Nat n, Nat c) {
    // x/0 = 1 makes the c = 0 member bounded.
    return {"div:" + std::to_string(n) + ":" + std::to_string(c),
            [n, c](Nat i) { return scaled_div(rtl::iter_log(n, i), c); }, true, c != 0};
}

bool check_monotone(const ParamFunction& f, Nat probe_hi) {
    Nat prev = f(0);
    for (Nat i = 1; i <= probe_hi; ++i) {
        Nat cur = f(i);
        if (cur < prev) return false;
        prev = cur;
    }
    return true;
}

bool check_reaches(const ParamFunction& f, Nat bound, Nat scan_cap) {
    try {
        (void)pseudo_inverse(f, bound, scan_cap);
        return true;
    } catch (const NotAttained&) {
        return false;
    }
}

BigNat tower(Nat n, const BigNat& i, Nat max_bits) {
    BigNat value = i;
    for (Nat step = 0; step < n; ++step) {
        if (value > max_bits) {
            throw ResourceError("tower 2_" + std::to_string(n) + " exceeds the bit cap of " + std::to_string(max_bits));
        }
        BigNat next = 1;
        next <<= static_cast<unsigned>(value);
        value = std::move(next);
    }
    return value;
}

Nat tower_saturating(Nat n, Nat i) noexcept {
    Nat value = i;
    for (Nat step = 0; step < n; ++step) {
        if (value >= 64) return kNatMax;
        value = Nat{1} << value;
    }
    return value;
}

Nat ceil_log2(Nat i) noexcept {
    if (i <= 1) return 0;
    return static_cast<Nat>(64 - std::countl_zero(i - 1));
}

Nat ceil_root(Nat i, Nat c) {
    if (c == 0) throw InvalidArgument("ceil_root needs c >= 1");
    if (c == 1 || i <= 1) return i;
    Nat lo = 1, hi = 1;
    while (sat_pow(hi, c) < i) hi *= 2;
    // invariant: lo^c < i <= hi^c
    lo = hi / 2;
    if (lo == 0) return hi;
    while (hi - lo > 1) {
        Nat mid = lo + (hi - lo) / 2;
        if (sat_pow(mid, c) >= i) hi = mid;
        else lo = mid;
    }
    return hi;
}

BigNat ceil_root(const BigNat& i, Nat c) {
    if (c == 0) throw InvalidArgument("ceil_root needs c >= 1");
    if (c == 1 || i <= 1) return i;
    auto pow_ge = [&](const BigNat& base) { return boost::multiprecision::pow(base, static_cast<unsigned>(c)) >= i; };
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(i)) + 1;
    BigNat hi = BigNat(1) << (bits / static_cast<unsigned>(c) + 1);
    BigNat lo = 0;
    while (hi - lo > 1) {
        BigNat mid = (lo + hi) / 2;
        if (pow_ge(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

Nat pseudo_inverse(const ParamFunction& f, Nat i, Nat scan_cap) {
    if (f(0) >= i) return 0;
    Nat hi = 1;
    while (true) {
        if (hi > scan_cap) hi = scan_cap;
        if (f(hi) >= i) break;
        if (hi == scan_cap) {
            throw NotAttained(f.name() + " does not reach " + std::to_string(i) + " below " + std::to_string(scan_cap));
        }
        hi = hi > scan_cap / 2 ? scan_cap : hi * 2;
    }
    Nat lo = hi / 2;  // f(lo) < i holds: either lo = 0 or lo was probed before hi
    while (hi - lo > 1) {
        Nat mid = lo + (hi - lo) / 2;
        if (f(mid) >= i) hi = mid;
        else lo = mid;
    }
    return hi;
}

Nat iter_log(Nat n, Nat i) noexcept {
    // 2^y >= i  <=>  y >= ceil_log2(i), so the tower inverse peels one level at a time.
    Nat value = i;
    for (Nat step = 0; step < n && value > 0; ++step) value = ceil_log2(value);
    return value;
}

Nat log_star(Nat i) noexcept {
    Nat n = 0;
    Nat t = 1;
    while (t < i) {
        t = t >= 64 ? kNatMax : Nat{1} << t;
        ++n;
    }
    return n;
}

Nat root_log(Nat n, Nat c, Nat i) { return ceil_root(iter_log(n, i), c); }

Nat scaled_div(Nat i, Nat c) noexcept {
    if (c == 0) return 1;
    return i / c + (i % c != 0 ? 1 : 0);
}

}  // namespace rtl
