#include "rtl/fnspec.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "rtl/bounds.hpp"
#include "rtl/errors.hpp"
#include "rtl/ordinal.hpp"

namespace rtl {

Nat parse_nat(std::string_view text) {
    Nat v = 0;
    if (text.empty() || (text.size() > 1 && text[0] == '0'))
        throw InvalidArgument("expected a natural number, got '" + std::string(text) + "'");
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InvalidArgument("expected a natural number, got '" + std::string(text) + "'");
    return v;
}

namespace {

std::vector<std::string_view> split(std::string_view text, std::size_t max_parts) {
    std::vector<std::string_view> parts;
    while (parts.size() + 1 < max_parts) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) break;
        parts.push_back(text.substr(0, colon));
        text.remove_prefix(colon + 1);
    }
    parts.push_back(text);
    return parts;
}

void expect_arity(const std::vector<std::string_view>& parts, std::size_t n, std::string_view text) {
    if (parts.size() != n) throw InvalidArgument("malformed function spec '" + std::string(text) + "'");
}

}  // namespace

ParamFunction parse_function(std::string_view text, std::uint64_t hardy_budget) {
    // The ordinal literal is the tail of a falpha spec and has no colons.
    const auto parts = split(text, 4);
    const std::string_view head = parts[0];
    if (head == "id" || head == "halve" || head == "pow2" || head == "logstar") {
        expect_arity(parts, 1, text);
        if (head == "id") return ParamFunction::identity();
        if (head == "halve") return ParamFunction::halve();
        if (head == "pow2") return ParamFunction::power_of_two();
        return ParamFunction::log_star();
    }
    if (head == "const") {
        expect_arity(parts, 2, text);
        return ParamFunction::constant(parse_nat(parts[1]));
    }
    if (head == "log") {
        expect_arity(parts, 2, text);
        return ParamFunction::iter_log(parse_nat(parts[1]));
    }
    if (head == "rootlog" || head == "div") {
        expect_arity(parts, 3, text);
        const Nat n = parse_nat(parts[1]), c = parse_nat(parts[2]);
        return head == "rootlog" ? ParamFunction::root_log(n, c) : ParamFunction::log_div(n, c);
    }
    if (head == "falpha") {
        expect_arity(parts, 4, text);
        const ThresholdVariant v = parse_threshold_variant(parts[1]);
        const Nat d = parse_nat(parts[2]);
        const Ordinal alpha = parse_ordinal(parts[3]);
        std::string name = "falpha:" + std::string(to_string(v)) + ":" + std::to_string(d) + ":" + to_string(alpha);
        return ParamFunction(std::move(name),
                             [=](Nat i) { return threshold_f_alpha(v, d, alpha, i, hardy_budget); });
    }
    throw InvalidArgument("unknown function spec '" + std::string(text) + "'");
}

}  // namespace rtl
