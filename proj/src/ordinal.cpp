#include "rtl/ordinal.hpp"

#include <algorithm>
#include <cctype>

#include "rtl/errors.hpp"

namespace rtl {

Ordinal Ordinal::natural(Nat n) {
    Ordinal result;
    if (n > 0) result.terms_.push_back({Ordinal{}, n});
    return result;
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, Nat coefficient) {
    Ordinal result;
    if (coefficient > 0) result.terms_.push_back({exponent, coefficient});
    return result;
}

bool Ordinal::is_successor() const noexcept { return !terms_.empty() && terms_.back().exponent.is_zero(); }

std::optional<Nat> Ordinal::as_natural() const noexcept {
    if (terms_.empty()) return Nat{0};
    if (terms_.size() == 1 && terms_[0].exponent.is_zero()) return terms_[0].coefficient;
    return std::nullopt;
}

Ordinal Ordinal::limit_part() const {
    Ordinal result = *this;
    if (result.is_successor()) result.terms_.pop_back();
    return result;
}

std::size_t Ordinal::height() const noexcept {
    std::size_t h = 0;
    for (const auto& t : terms_) h = std::max(h, t.exponent.height() + 1);
    return h;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (auto c = a.terms_[k].exponent <=> b.terms_[k].exponent; c != 0) return c;
        if (auto c = a.terms_[k].coefficient <=> b.terms_[k].coefficient; c != 0) return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const auto& lead = b.terms_.front();
    Ordinal result;
    for (const auto& t : a.terms_) {
        if (t.exponent < lead.exponent) break;
        result.terms_.push_back(t);
    }
    auto it = b.terms_.begin();
    if (!result.terms_.empty() && result.terms_.back().exponent == lead.exponent) {
        result.terms_.back().coefficient = sat_add(result.terms_.back().coefficient, lead.coefficient);
        ++it;
    }
    result.terms_.insert(result.terms_.end(), it, b.terms_.end());
    return result;
}

Ordinal omega_tower(Nat d, Nat depth_cap) {
    if (d > depth_cap) throw ResourceError("omega tower of height " + std::to_string(d) + " exceeds depth cap");
    Ordinal result = Ordinal::natural(1);
    for (Nat k = 0; k < d; ++k) result = Ordinal::omega_power(result);
    return result;
}

Ordinal fund_seq(const Ordinal& a, Nat n) {
    if (a.is_zero()) throw InvalidArgument("0 has no fundamental sequence");
    if (a.is_successor()) throw InvalidArgument(to_string(a) + " is a successor");

    Ordinal prefix;
    prefix.terms_.assign(a.terms_.begin(), a.terms_.end() - 1);
    const OrdinalTerm& last = a.terms_.back();
    if (last.coefficient > 1) prefix.terms_.push_back({last.exponent, last.coefficient - 1});

    const Ordinal& beta = last.exponent;
    if (beta.is_successor()) {
        Ordinal pred;
        pred.terms_ = beta.terms_;
        if (--pred.terms_.back().coefficient == 0) pred.terms_.pop_back();
        return prefix + Ordinal::omega_power(pred, n);
    }
    return prefix + Ordinal::omega_power(fund_seq(beta, n));
}

Ordinal fund_seq(Epsilon0, Nat n) { return omega_tower(n); }

HardyRun hardy_run(const Ordinal& a, Nat x, std::uint64_t budget, Nat threshold) {
    Ordinal alpha = a;
    std::uint64_t steps = 0;
    while (true) {
        if (x >= threshold) return {x, steps, true};
        if (alpha.is_zero()) return {x, steps, x >= threshold};
        if (steps >= budget) throw BudgetExceeded("hardy evaluation of " + to_string(a), steps);
        ++steps;
        if (alpha.is_successor()) {
            Nat k = alpha.terms().back().coefficient;
            if (x > kNatMax - k) {
                if (threshold != kNatMax) return {kNatMax, steps, true};
                throw ResourceError("hardy value exceeds 64 bits");
            }
            x += k;
            alpha = alpha.limit_part();
        } else {
            alpha = fund_seq(alpha, x);
        }
    }
}

Nat hardy(const Ordinal& a, Nat x, std::uint64_t budget) { return hardy_run(a, x, budget).value; }

Nat hardy_inverse(const Ordinal& a, Nat i, std::uint64_t budget) {
    // H_a is nondecreasing in x and H_a(x) >= x. Gallop up from 0 so probes stay
    // near the answer (large x is costly for big ordinals), then bisect.
    std::uint64_t spent = 0;
    const auto reaches = [&](Nat x) {
        if (spent > budget) throw BudgetExceeded("hardy inverse of " + to_string(a), spent);
        HardyRun run{};
        try {
            run = hardy_run(a, x, budget - spent, i);
        } catch (const BudgetExceeded& e) {
            throw BudgetExceeded("hardy inverse of " + to_string(a), spent + e.steps());
        }
        spent += run.steps;
        return run.reached;
    };
    Nat lo = 0, hi = i;
    for (Nat step = 1; lo < hi; step = step > kNatMax / 2 ? kNatMax : 2 * step) {
        const Nat probe = hi - lo > step ? lo + step - 1 : hi;
        if (probe == hi || reaches(probe)) {
            hi = probe;
            break;
        }
        lo = probe + 1;
    }
    while (lo < hi) {
        const Nat mid = lo + (hi - lo) / 2;
        if (reaches(mid)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

std::vector<HardyMonotonicityViolation> hardy_monotonicity_violations(const std::vector<Ordinal>& probes,
                                                                      const std::vector<Nat>& xs,
                                                                      std::uint64_t budget) {
    std::vector<HardyMonotonicityViolation> out;
    for (const auto& alpha : probes) {
        for (const auto& beta : probes) {
            if (!(alpha < beta)) continue;
            for (Nat x : xs) {
                if (hardy(alpha, x, budget) > hardy(beta, x, budget)) out.push_back({alpha, beta, x});
            }
        }
    }
    return out;
}

namespace {

std::string exponent_string(const Ordinal& e) {
    if (auto n = e.as_natural()) return std::to_string(*n);
    if (e.terms().size() == 1 && e.terms()[0].coefficient == 1) return to_string(e);
    return "(" + to_string(e) + ")";
}

class OrdinalParser {
public:
    explicit OrdinalParser(std::string_view text) : text_(text) {}

    Ordinal parse() {
        Ordinal value = sum();
        if (pos_ != text_.size()) fail("trailing input");
        return value;
    }

private:
    Ordinal sum() {
        Ordinal value = term();
        while (peek() == '+') {
            ++pos_;
            value = value + term();
        }
        return value;
    }

    Ordinal term() {
        if (std::isdigit(static_cast<unsigned char>(peek()))) return Ordinal::natural(number());
        Ordinal exponent = power_exponent();
        Nat k = 1;
        if (peek() == '*') {
            ++pos_;
            k = number();
            if (k == 0) fail("coefficient must be positive");
        }
        return Ordinal::omega_power(exponent, k);
    }

    // After 'w': returns the exponent of the power just read.
    Ordinal power_exponent() {
        expect('w');
        if (peek() != '^') return Ordinal::natural(1);
        ++pos_;
        if (std::isdigit(static_cast<unsigned char>(peek()))) return Ordinal::natural(number());
        if (peek() == '(') {
            ++pos_;
            Ordinal inner = sum();
            expect(')');
            return inner;
        }
        return Ordinal::omega_power(power_exponent());
    }

    Nat number() {
        std::size_t start = pos_;
        Nat value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            Nat digit = static_cast<Nat>(text_[pos_] - '0');
            if (value > (kNatMax - digit) / 10) fail("number out of range");
            value = value * 10 + digit;
            ++pos_;
        }
        if (pos_ == start) fail("expected a number");
        if (text_[start] == '0' && pos_ - start > 1) fail("leading zero");
        return value;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw InvalidArgument("bad ordinal literal '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += '+';
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += 'w';
        if (t.exponent != Ordinal::natural(1)) out += '^' + exponent_string(t.exponent);
        if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
    }
    return out;
}

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

}  // namespace rtl
