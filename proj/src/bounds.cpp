#include "rtl/bounds.hpp"

#include <algorithm>
#include <bit>

#include "rtl/errors.hpp"

namespace rtl {

namespace {

constexpr Nat kExponentBits = Nat{1} << 24;

BigNat checked_pow(Nat base, Nat exp) {
    if (base > 1 && sat_mul(static_cast<Nat>(std::bit_width(base)), exp) > kExponentBits)
        throw ResourceError("power exceeds the bit cap");
    return boost::multiprecision::pow(BigNat(base), static_cast<unsigned>(exp));
}

BigNat tower_of(Nat n, const BigNat& x) { return tower(n, x, kDefaultTowerBits); }

}  // namespace

BigNat ar_upper_bound(Nat d, Nat k, Nat r) { return tower_of(d, checked_pow(k, sat_add(r, 1))); }

BoundValue ph_upper_bound_unguarded(Nat d, Nat k, Nat m, Nat r) {
    if (d == 0) throw GuardViolation("PH bound needs d >= 1");
    BoundValue out;
    out.guarded = k >= sat_add(r, m);
    out.value = tower_of(d - 1, checked_pow(r, sat_mul(d, d)) * k) + m;
    return out;
}

BigNat ph_upper_bound(Nat d, Nat k, Nat m, Nat r) {
    if (d == 0) throw GuardViolation("PH bound needs d >= 1");
    if (k < sat_add(r, m)) throw GuardViolation("PH bound needs k >= r + m");
    return ph_upper_bound_unguarded(d, k, m, r).value;
}

BoundValue km_upper_bound_unguarded(Nat d, Nat k, Nat a, Nat m) {
    if (d < 2) throw GuardViolation("KM bound needs d >= 2");
    BoundValue out;
    const Nat e = sat_mul(sat_mul(d, d), m);
    out.guarded = k >= sat_add(sat_add(a, e), 2);
    out.value = tower_of(d - 2, checked_pow(k, e)) + a;
    return out;
}

BigNat km_upper_bound(Nat d, Nat k, Nat a, Nat m) {
    if (d < 2) throw GuardViolation("KM bound needs d >= 2");
    const Nat e = sat_mul(sat_mul(d, d), m);
    if (k < sat_add(sat_add(a, e), 2)) throw GuardViolation("KM bound needs k >= a + d^2 m + 2");
    return km_upper_bound_unguarded(d, k, a, m).value;
}

std::string_view to_string(ThresholdVariant v) noexcept {
    switch (v) {
        case ThresholdVariant::ar_root: return "ar-root";
        case ThresholdVariant::ph_div: return "ph-div";
        case ThresholdVariant::diag_log: return "diag-log";
    }
    return "?";
}

ThresholdVariant parse_threshold_variant(std::string_view text) {
    if (text == "ar-root") return ThresholdVariant::ar_root;
    if (text == "ph-div") return ThresholdVariant::ph_div;
    if (text == "diag-log") return ThresholdVariant::diag_log;
    throw InvalidArgument("unknown threshold variant '" + std::string(text) + "'");
}

Nat threshold_f_alpha(ThresholdVariant v, Nat d, const Ordinal& alpha, Nat i, std::uint64_t budget) {
    const Nat index = hardy_inverse(alpha, i, budget);
    switch (v) {
        case ThresholdVariant::ar_root: return root_log(d, std::max<Nat>(1, index), i);
        case ThresholdVariant::ph_div: return scaled_div(iter_log(d + 1, i), index);
        case ThresholdVariant::diag_log: return iter_log(index, i);
    }
    throw InvalidArgument("unknown threshold variant");
}

IndexedFamily::IndexedFamily(std::string name, Eval eval, Nat min_index)
    : name_(std::move(name)), eval_(std::move(eval)), min_index_(min_index) {}

ParamFunction IndexedFamily::member(Nat c) const {
    IndexedFamily self = *this;
    return ParamFunction(name_ + "@" + std::to_string(c), [self, c](Nat i) { return self(c, i); });
}

IndexedFamily IndexedFamily::mul() {
    return {"mul", [](Nat c, Nat i) { return sat_mul(i, c); }, 1};
}

IndexedFamily IndexedFamily::tower_pow(Nat d) {
    return {"towerpow:" + std::to_string(d), [d](Nat c, Nat i) { return tower_saturating(d, sat_pow(i, c)); }, 1};
}

IndexedFamily IndexedFamily::tower_lin(Nat d) {
    return {"towerlin:" + std::to_string(d), [d](Nat c, Nat i) { return tower_saturating(d, sat_mul(i, c)); }, 1};
}

IndexedFamily IndexedFamily::identity() {
    return {"id", [](Nat, Nat i) { return i; }};
}

bool check_monotone(const IndexedFamily& l, Nat c_hi, Nat i_hi) {
    for (Nat c = 0; c <= c_hi; ++c) {
        for (Nat i = 0; i <= i_hi; ++i) {
            const Nat v = l(c, i);
            if (i > 0 && l(c, i - 1) > v) return false;
            if (c > 0 && l(c - 1, i) > v) return false;
        }
    }
    return true;
}

Nat sharpening_compose(const IndexedFamily& l, const ParamFunction& H, Nat i, Nat scan_cap) {
    const Nat c = pseudo_inverse(H, i, scan_cap);
    return pseudo_inverse(l.member(c), i, scan_cap);
}

ParamFunction sharpened(const IndexedFamily& l, const ParamFunction& H, Nat scan_cap) {
    return ParamFunction("sharpen(" + l.name() + "," + H.name() + ")",
                         [l, H, scan_cap](Nat i) { return sharpening_compose(l, H, i, scan_cap); });
}

ParamFunction family_inverse(const IndexedFamily& l, Nat c, Nat scan_cap) {
    const ParamFunction member = l.member(c);
    return ParamFunction("inv:" + member.name(), [member, scan_cap](Nat i) { return pseudo_inverse(member, i, scan_cap); });
}

ParamFunction inverse_function(const ParamFunction& u, Nat scan_cap) {
    return ParamFunction("inv:" + u.name(), [u, scan_cap](Nat i) { return pseudo_inverse(u, i, scan_cap); });
}

namespace {

std::string show_args(const TabulatedM::Args& args) {
    std::string out = "(";
    for (std::size_t k = 0; k < args.size(); ++k) out += (k ? "," : "") + std::to_string(args[k]);
    return out + ")";
}

}  // namespace

void TabulatedM::set(const std::string& tag, const Args& args, Nat value) { entries_[{tag, args}] = value; }

bool TabulatedM::has(const std::string& tag, const Args& args) const { return entries_.count({tag, args}) != 0; }

Nat TabulatedM::at(const std::string& tag, const Args& args) const {
    auto it = entries_.find({tag, args});
    if (it == entries_.end()) throw MissingEntry("grid has no entry M_" + tag + show_args(args));
    return it->second;
}

void TabulatedM::register_function(const ParamFunction& f) { functions_.insert_or_assign(f.name(), f); }

const ParamFunction& TabulatedM::function(const std::string& tag) const {
    auto it = functions_.find(tag);
    if (it == functions_.end()) throw MissingEntry("grid has no function tagged " + tag);
    return it->second;
}

ProbeReport probe_upper_bounds_lemma(const TabulatedM& M, const ParamFunction& u, const UpperGrid& h) {
    if (h.empty() || M.empty()) throw MissingEntry("upper-bounds probe needs a nonempty grid");
    ProbeReport rep;
    const std::string inv = inverse_function(u).name();
    for (const auto& [point, hv] : h) {
        const TabulatedM::Args args{point.first, point.second};
        const Nat lower = M.at(inv, args);
        const Nat mid = M.at(ParamFunction::constant(hv).name(), args);
        const Nat upper = u(hv);
        ++rep.checks;
        if (!(lower <= mid && mid <= upper)) {
            rep.violations.push_back({"M" + show_args(args), "M_{u^-1} = " + std::to_string(lower) + ", M_h = " +
                                                                  std::to_string(mid) + ", u(h) = " + std::to_string(upper)});
        }
    }
    // Monotonicity hypothesis on every pair of registered functions.
    for (const auto& [point, hv] : h) {
        (void)hv;
        const TabulatedM::Args args{point.first, point.second};
        for (const auto& [ftag, f] : M.functions()) {
            if (!M.has(ftag, args)) continue;
            for (const auto& [gtag, g] : M.functions()) {
                if (ftag == gtag || !M.has(gtag, args)) continue;
                const Nat mg = M.at(gtag, args);
                bool below = true;
                for (Nat i = 0; i <= mg && below; ++i) below = f(i) <= g(i);
                if (!below) continue;
                ++rep.checks;
                const Nat mf = M.at(ftag, args);
                if (mf > mg) {
                    rep.violations.push_back({"M" + show_args(args),
                                              ftag + " <= " + gtag + " up to " + std::to_string(mg) + " but M_f = " +
                                                  std::to_string(mf)});
                }
            }
        }
    }
    return rep;
}

ProbeReport probe_proof_sharpening(const TabulatedM& M, const IndexedFamily& l, const ParamFunction& H,
                                   const std::vector<Nat>& xs, Nat scan_cap) {
    ProbeReport rep;
    const ParamFunction h = sharpened(l, H, scan_cap);
    for (Nat x : xs) {
        if (x == 0) continue;
        const TabulatedM::Args args{x, x, x};
        const Nat mh = M.at(h.name(), args);
        if (mh >= H(x)) continue;
        const ParamFunction linv = family_inverse(l, x, scan_cap);
        for (Nat i = 0; i <= mh; ++i) {
            ++rep.checks;
            const Nat hi = h(i), li = linv(i);
            if (hi < li) {
                rep.violations.push_back({"x=" + std::to_string(x), "h(" + std::to_string(i) + ") = " + std::to_string(hi) +
                                                                          " < l_x^-1 = " + std::to_string(li)});
            }
        }
        ++rep.checks;
        const Nat ml = M.at(linv.name(), args);
        if (mh < ml) {
            rep.violations.push_back({"x=" + std::to_string(x), "M_h = " + std::to_string(mh) + " < M_{l_x^-1} = " +
                                                                      std::to_string(ml)});
        }
    }
    return rep;
}

TabulatedM toy_upper_grid(const std::vector<ParamFunction>& fs, const UpperGrid& points) {
    TabulatedM M;
    for (const auto& f : fs) {
        M.register_function(f);
        for (const auto& [point, hv] : points) {
            (void)hv;
            M.set(f.name(), {point.first, point.second}, sat_add(sat_add(f(point.second), point.first), point.second));
        }
    }
    return M;
}

TabulatedM toy_sharpening_grid(const IndexedFamily& l, const ParamFunction& H, const std::vector<Nat>& xs, Nat scan_cap) {
    TabulatedM M;
    const ParamFunction h = sharpened(l, H, scan_cap);
    M.register_function(h);
    for (Nat x : xs) {
        if (x == 0) continue;
        const ParamFunction linv = family_inverse(l, x, scan_cap);
        M.register_function(linv);
        for (const ParamFunction* f : {&h, &linv}) M.set(f->name(), {x, x, x}, sat_add((*f)(x), 2 * x));
    }
    return M;
}

ParamFunction offset_function(const ParamFunction& f, Nat x) {
    return ParamFunction(f.name() + "+" + std::to_string(x), [f, x](Nat i) { return sat_add(f(i), x); });
}

namespace {

Nat exact_ar(unsigned d, const ParamFunction& f, const SearchConfig& cfg) {
    SearchOutcome out = ar_number(d, 1, f, cfg);
    if (out.status != SearchStatus::exact)
        throw BudgetExceeded("AR^" + std::to_string(d) + "_{" + f.name() + "}(1) not found within cap/budget",
                             out.nodes_explored);
    return *out.value;
}

}  // namespace

TabulatedM ar_upper_grid(const std::vector<ParamFunction>& fs, const UpperGrid& points, const SearchConfig& cfg) {
    TabulatedM M;
    for (const auto& f : fs) {
        M.register_function(f);
        for (const auto& [point, hv] : points) {
            (void)hv;
            const auto [d, x] = point;
            if (d == 0) throw InvalidArgument("AR grid needs d >= 1");
            M.set(f.name(), {d, x}, exact_ar(static_cast<unsigned>(d), offset_function(f, x), cfg));
        }
    }
    return M;
}

TabulatedM ar_sharpening_grid(const IndexedFamily& l, const ParamFunction& H, const std::vector<Nat>& xs,
                              const SearchConfig& cfg, Nat scan_cap) {
    TabulatedM M;
    const ParamFunction h = sharpened(l, H, scan_cap);
    M.register_function(h);
    for (Nat x : xs) {
        if (x == 0) continue;
        const ParamFunction linv = family_inverse(l, x, scan_cap);
        M.register_function(linv);
        for (const ParamFunction* f : {&h, &linv}) M.set(f->name(), {x, x, x}, exact_ar(1, offset_function(*f, x), cfg));
    }
    return M;
}

}  // namespace rtl
