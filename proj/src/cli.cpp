#include "rtl/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rtl/bounds.hpp"
#include "rtl/errors.hpp"
#include "rtl/fnspec.hpp"
#include "rtl/io.hpp"
#include "rtl/ordinal.hpp"

namespace rtl {

namespace {

struct Common {
    bool json = false;
    bool no_cache = false;
    std::string cache_dir;

    ResultCache cache() const {
        return ResultCache(cache_dir.empty() ? ResultCache::default_dir() : std::filesystem::path(cache_dir));
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_flag("--json", c.json, "Print the result record as JSON");
    app->add_flag("--no-cache", c.no_cache, "Neither read nor write the result cache");
    app->add_option("--cache-dir", c.cache_dir, "Cache directory (default: $RTL_CACHE_DIR)");
}

// --- compute ---

struct ComputeArgs {
    std::string kind = "ar";
    unsigned d = 1;
    Nat r = 1, m = 0, a = 0, cap = 64;
    std::string f = "id";
    std::uint64_t budget = 200'000'000;
    unsigned threads = 1;
    std::string cert;
};

Kind kind_from_cli(const std::string& s) {
    std::string up = s;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    return parse_kind(up);
}

std::map<std::string, std::string> compute_params(const ComputeArgs& a, const ParamFunction& f) {
    return {{"kind", a.kind},
            {"d", std::to_string(a.d)},
            {"r", std::to_string(a.r)},
            {"m", std::to_string(a.m)},
            {"a", std::to_string(a.a)},
            {"f", f.name()},
            {"cap", std::to_string(a.cap)},
            {"budget", std::to_string(a.budget)},
            {"threads", std::to_string(a.threads)}};
}

// Returns the record, served from the cache when possible.
ResultRecord compute_record(const ComputeArgs& a, const Common& common, bool& cached) {
    const Kind kind = kind_from_cli(a.kind);
    const ParamFunction f = parse_function(a.f);
    if (a.d == 0) throw InvalidArgument("--d must be >= 1");
    if (a.cap == 0 || a.budget == 0) throw InvalidArgument("--cap and --budget must be positive");
    if (kind == Kind::AR && a.r == 0) throw InvalidArgument("--r must be >= 1");
    if (kind == Kind::PH && a.r == 0) throw InvalidArgument("--r must be >= 1");
    const auto params = compute_params(a, f);
    cached = false;
    if (!common.no_cache) {
        if (auto rec = common.cache().load("compute", params)) {
            cached = true;
            return *rec;
        }
    }
    SearchConfig cfg{a.cap, a.budget, std::max(1u, a.threads)};
    Params p{kind, a.d, kind == Kind::KM ? 1 : a.r, a.m, a.a, f};
    SearchOutcome out = ramsey_number(p, cfg);
    ResultRecord rec{"compute", params, outcome_to_json(out), tool_version(), utc_timestamp()};
    if (!common.no_cache) common.cache().store(rec);
    return rec;
}

int run_compute(const ComputeArgs& a, const Common& common, std::ostream& out) {
    bool cached = false;
    ResultRecord rec = compute_record(a, common, cached);
    const SearchOutcome outcome = outcome_from_json(rec.outcome);
    if (!a.cert.empty() && outcome.lower_certificate) write_certificate(a.cert, *outcome.lower_certificate);
    if (common.json) {
        out << record_to_json(rec).dump(2) << "\n";
    } else {
        out << "value: " << (outcome.value ? std::to_string(*outcome.value) : "none") << "\n";
        out << "status: " << to_string(outcome.status) << "\n";
        out << "nodes: " << outcome.nodes_explored << "\n";
        out << "certificate: "
            << (outcome.lower_certificate ? (a.cert.empty() ? "(not written)" : a.cert) : "none") << "\n";
        if (cached) out << "cached: yes\n";
    }
    return outcome.status == SearchStatus::budget_exhausted ? kExitBudget : kExitOk;
}

// --- verify ---

struct VerifyArgs {
    std::string kind = "ar";
    unsigned d = 1;
    Nat c = 1, a_d = 1;
    std::optional<Nat> m;
    std::string f = "halve";
    Nat R = 0;
    std::optional<Nat> r;
    Nat value_cap = kNatMax;
    std::uint64_t max_sources = 1u << 20;
    std::uint64_t sample = 0;
    std::uint64_t seed = 1;
    std::string levels = "default";
};

int run_verify(const VerifyArgs& v, const Common& common, std::ostream& out) {
    const Kind kind = kind_from_cli(v.kind);
    ReductionConfig cfg;
    cfg.d = v.d;
    cfg.c = v.c;
    cfg.a_d = v.a_d;
    cfg.m = v.m.value_or(kind == Kind::KM ? 3 : 0);
    cfg.f = parse_function(v.f);
    if (cfg.c == 0 || cfg.a_d == 0) throw InvalidArgument("--c and --a-d must be >= 1");
    if (v.levels != "default" && v.levels != "zero") throw InvalidArgument("--levels must be default or zero");

    TransferOptions opt;
    opt.r = v.r.value_or(kind == Kind::PH ? 2 : 1);
    opt.value_cap = v.value_cap;
    opt.max_sources = v.max_sources;
    opt.allow_sampling = v.sample > 0;
    opt.samples = v.sample;
    opt.seed = v.seed;
    if (v.levels == "zero") {
        const Nat lo = kind == Kind::PH ? pseudo_inverse(cfg.f, cfg.m, v.R) : 0;
        const unsigned width = kind == Kind::AR ? ar_antichain_levels(cfg, v.R).levels().begin()->second.colouring.width() : 1;
        opt.levels = zero_levels(kind, cfg, lo, v.R, width);
    }

    std::map<std::string, std::string> params{{"kind", v.kind},
                                              {"d", std::to_string(cfg.d)},
                                              {"c", std::to_string(cfg.c)},
                                              {"a_d", std::to_string(cfg.a_d)},
                                              {"m", std::to_string(cfg.m)},
                                              {"f", cfg.f.name()},
                                              {"R", std::to_string(v.R)},
                                              {"r", std::to_string(opt.r)},
                                              {"value_cap", std::to_string(opt.value_cap)},
                                              {"max_sources", std::to_string(opt.max_sources)},
                                              {"sample", std::to_string(v.sample)},
                                              {"seed", std::to_string(v.seed)},
                                              {"levels", v.levels}};
    std::optional<ResultRecord> rec;
    if (!common.no_cache) rec = common.cache().load("verify", params);
    const bool cached = rec.has_value();
    if (!rec) {
        TransferReport rep = transfer_test(kind, cfg, v.R, opt);
        rec = ResultRecord{"verify", params, report_to_json(rep), tool_version(), utc_timestamp()};
        if (!common.no_cache) common.cache().store(*rec);
    }
    const Json& rep = rec->outcome;
    const auto failures = rep.at("failures").get<std::uint64_t>();
    if (common.json) {
        out << record_to_json(*rec).dump(2) << "\n";
    } else {
        out << "sources: " << rep.at("sources") << "\n";
        out << "cases: " << rep.at("cases") << "\n";
        out << "premises: " << rep.at("premises") << "\n";
        out << "sampled: " << (rep.at("sampled").get<bool>() ? "yes" : "no") << "\n";
        out << "levels verified bad: " << (rep.at("levels_verified").get<bool>() ? "yes" : "no") << "\n";
        out << "counterexamples: " << failures << "\n";
        if (failures > 0) {
            const Json& ce = rep.at("counterexamples").at(0);
            out << "first counterexample: source " << ce.at("source") << ", points " << ce.at("points").dump() << ": "
                << ce.at("reason").get<std::string>() << "\n";
            out << ce.at("colouring").get<std::string>();
        }
        if (cached) out << "cached: yes\n";
    }
    return failures == 0 ? kExitOk : kExitCounterexample;
}

// --- eval ---

struct EvalArgs {
    Nat n = 0, i = 0, c = 1, d = 1, k = 0, r = 1, m = 0, a = 0, x = 0;
    std::string alpha = "0";
    std::string f = "id";
    std::string H = "pow2";
    std::string family = "mul";
    std::string variant = "ar-root";
    std::uint64_t budget = kDefaultHardyBudget;
    Nat scan_cap = kDefaultScanCap;
    bool unguarded = false;
};

IndexedFamily parse_family(const std::string& text) {
    if (text == "mul") return IndexedFamily::mul();
    if (text == "id") return IndexedFamily::identity();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const Nat d = parse_nat(text.substr(colon + 1));
        if (head == "towerpow") return IndexedFamily::tower_pow(d);
        if (head == "towerlin") return IndexedFamily::tower_lin(d);
    }
    throw InvalidArgument("unknown family '" + text + "' (mul, id, towerpow:d, towerlin:d)");
}

std::string bound_text(const BoundValue& b, bool show_guard) {
    std::string s = b.value.str();
    if (show_guard && !b.guarded) s += " (unguarded)";
    return s;
}

int run_eval(const std::string& what, const EvalArgs& e, const Common& common, std::ostream& out) {
    std::string value;
    if (what == "tower") {
        value = tower(e.n, e.i).str();
    } else if (what == "iter-log") {
        value = std::to_string(iter_log(e.n, e.i));
    } else if (what == "log-star") {
        value = std::to_string(log_star(e.i));
    } else if (what == "root-log") {
        value = std::to_string(root_log(e.n, e.c, e.i));
    } else if (what == "scaled-div") {
        value = std::to_string(scaled_div(e.i, e.c));
    } else if (what == "fn") {
        value = std::to_string(parse_function(e.f, e.budget)(e.i));
    } else if (what == "pseudo-inverse") {
        value = std::to_string(pseudo_inverse(parse_function(e.f, e.budget), e.i, e.scan_cap));
    } else if (what == "hardy") {
        value = std::to_string(hardy(parse_ordinal(e.alpha), e.x, e.budget));
    } else if (what == "hardy-inverse") {
        value = std::to_string(hardy_inverse(parse_ordinal(e.alpha), e.i, e.budget));
    } else if (what == "falpha") {
        value = std::to_string(
            threshold_f_alpha(parse_threshold_variant(e.variant), e.d, parse_ordinal(e.alpha), e.i, e.budget));
    } else if (what == "ar-bound") {
        value = ar_upper_bound(e.d, e.k, e.r).str();
    } else if (what == "ph-bound") {
        value = e.unguarded ? bound_text(ph_upper_bound_unguarded(e.d, e.k, e.m, e.r), true)
                            : ph_upper_bound(e.d, e.k, e.m, e.r).str();
    } else if (what == "km-bound") {
        value = e.unguarded ? bound_text(km_upper_bound_unguarded(e.d, e.k, e.a, e.m), true)
                            : km_upper_bound(e.d, e.k, e.a, e.m).str();
    } else if (what == "sharpen") {
        value = std::to_string(sharpening_compose(parse_family(e.family), parse_function(e.H, e.budget), e.i, e.scan_cap));
    } else {
        throw InvalidArgument("unknown eval target '" + what + "'");
    }
    if (common.json) {
        out << Json{{"eval", what}, {"value", value}}.dump() << "\n";
    } else {
        out << value << "\n";
    }
    return kExitOk;
}

// --- table ---

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned() || v.is_number_integer() || v.is_boolean()) return v.dump();
    throw InvalidArgument("table values must be strings or integers");
}

std::string substitute(std::string text, const std::map<std::string, std::string>& point) {
    for (const auto& [k, v] : point) {
        const std::string pat = "{" + k + "}";
        for (auto pos = text.find(pat); pos != std::string::npos; pos = text.find(pat, pos + v.size()))
            text.replace(pos, pat.size(), v);
    }
    return text;
}

void set_compute_field(ComputeArgs& a, const std::string& key, const std::string& v) {
    if (key == "d") a.d = static_cast<unsigned>(parse_nat(v));
    else if (key == "r") a.r = parse_nat(v);
    else if (key == "m") a.m = parse_nat(v);
    else if (key == "a") a.a = parse_nat(v);
    else if (key == "cap") a.cap = parse_nat(v);
    else if (key == "budget") a.budget = parse_nat(v);
    else if (key == "threads") a.threads = static_cast<unsigned>(parse_nat(v));
    else if (key == "f") a.f = v;
    else if (key == "kind") a.kind = v;
    else throw InvalidArgument("unknown table parameter '" + key + "'");
}

int run_table(const std::string& spec_path, const std::string& out_path, std::string format, const Common& common,
              std::ostream& out) {
    Json spec;
    try {
        spec = Json::parse(read_file(spec_path));
    } catch (const Json::parse_error& e) {
        throw InvalidArgument("table spec is not valid JSON: " + std::string(e.what()));
    }
    if (!spec.is_object()) throw InvalidArgument("table spec must be a JSON object");
    if (spec.value("command", std::string("compute")) != "compute") throw InvalidArgument("table supports command 'compute'");
    const Json params = spec.value("params", Json::object());
    const Json grid = spec.value("grid", Json::object());
    if (!params.is_object() || !grid.is_object()) throw InvalidArgument("params and grid must be objects");

    std::vector<std::string> keys;
    std::vector<std::vector<std::string>> values;
    for (const auto& [k, vs] : grid.items()) {
        if (!vs.is_array()) throw InvalidArgument("grid entry '" + k + "' must be an array");
        keys.push_back(k);
        values.emplace_back();
        for (const auto& v : vs) values.back().push_back(scalar_text(v));
    }
    std::map<std::string, std::string> base;
    for (const auto& [k, v] : params.items()) base[k] = scalar_text(v);
    if (spec.contains("kind")) base["kind"] = scalar_text(spec["kind"]);

    std::vector<std::string> columns = keys;
    for (const char* c : {"value", "status", "nodes"}) columns.emplace_back(c);
    std::vector<std::vector<std::string>> rows;
    const bool any_empty = keys.empty() || std::any_of(values.begin(), values.end(), [](const auto& v) { return v.empty(); });
    std::vector<std::size_t> idx(keys.size(), 0);
    while (!any_empty) {
        std::map<std::string, std::string> point;
        for (std::size_t k = 0; k < keys.size(); ++k) point[keys[k]] = values[k][idx[k]];
        ComputeArgs a;
        for (const auto& [k, v] : base) set_compute_field(a, k, substitute(v, point));
        for (const auto& [k, v] : point)
            if (!base.count(k) && (k == "d" || k == "r" || k == "m" || k == "a" || k == "cap" || k == "f"))
                set_compute_field(a, k, v);
        bool cached = false;
        const SearchOutcome o = outcome_from_json(compute_record(a, common, cached).outcome);
        std::vector<std::string> row;
        for (const auto& k : keys) row.push_back(point[k]);
        row.push_back(o.value ? std::to_string(*o.value) : "");
        row.emplace_back(to_string(o.status));
        row.push_back(std::to_string(o.nodes_explored));
        rows.push_back(std::move(row));
        std::size_t k = keys.size();
        while (k > 0 && ++idx[k - 1] == values[k - 1].size()) idx[--k] = 0;
        if (k == 0) break;
    }

    if (format.empty()) format = out_path.size() >= 5 && out_path.ends_with(".json") ? "json" : "csv";
    std::string text;
    if (format == "csv") {
        std::ostringstream ss;
        for (std::size_t k = 0; k < columns.size(); ++k) ss << (k ? "," : "") << columns[k];
        ss << "\n";
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) ss << (k ? "," : "") << row[k];
            ss << "\n";
        }
        text = ss.str();
    } else if (format == "json") {
        text = Json{{"schema", kTableSchema}, {"columns", columns}, {"rows", rows}}.dump(2) + "\n";
    } else {
        throw InvalidArgument("--format must be csv or json");
    }
    if (out_path.empty() || out_path == "-") {
        out << text;
    } else {
        write_file_atomic(out_path, text);
        out << "wrote " << rows.size() << " rows to " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact parameterised Ramsey numbers, compression checks and bounds", "rtl"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    Common common;
    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "Exact AR / PH / KM numbers by bad-colouring search");
    compute->add_option("kind", ca.kind, "ar, ph or km")->required()->check(CLI::IsMember({"ar", "ph", "km"}));
    compute->add_option("--d", ca.d, "Dimension");
    compute->add_option("--r", ca.r, "AR value width / PH colours");
    compute->add_option("--m", ca.m, "PH left end / KM witness size");
    compute->add_option("--a", ca.a, "KM left end");
    compute->add_option("--f", ca.f, "Parameter function");
    compute->add_option("--cap", ca.cap, "Largest R tried");
    compute->add_option("--budget", ca.budget, "Search node budget");
    compute->add_option("--threads", ca.threads, "Parallel width");
    compute->add_option("--cert", ca.cert, "Write the lower-bound certificate here");
    add_common(compute, common);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Exhaustive witness-transfer test of a compression");
    verify->add_option("kind", va.kind, "ar, ph or km")->required()->check(CLI::IsMember({"ar", "ph", "km"}));
    verify->add_option("--d", va.d, "Dimension offset (C has dimension d+1 for ar/ph, d for km)");
    verify->add_option("--c", va.c, "Root / divisor parameter c");
    verify->add_option("--a-d", va.a_d, "Level-family constant a_d");
    verify->add_option("--m", va.m, "PH source left end / KM witness size");
    verify->add_option("--f", va.f, "Compression function");
    verify->add_option("--R", va.R, "Target domain end")->required();
    verify->add_option("--r", va.r, "AR source width / PH source colours");
    verify->add_option("--value-cap", va.value_cap, "Largest AR/KM source value");
    verify->add_option("--max-sources", va.max_sources, "Enumeration budget");
    verify->add_option("--sample", va.sample, "Sample this many sources when over budget");
    verify->add_option("--seed", va.seed, "Sampling seed");
    verify->add_option("--levels", va.levels, "default, or zero for fault injection");
    add_common(verify, common);

    EvalArgs ea;
    std::string eval_target;
    auto* eval = app.add_subcommand("eval", "Evaluate a function, ordinal or bound");
    eval->add_option("what", eval_target,
                     "tower, iter-log, log-star, root-log, scaled-div, fn, pseudo-inverse, hardy, hardy-inverse, "
                     "falpha, ar-bound, ph-bound, km-bound, sharpen")
        ->required();
    eval->add_option("--n", ea.n);
    eval->add_option("--i", ea.i);
    eval->add_option("--c", ea.c);
    eval->add_option("--d", ea.d);
    eval->add_option("--k", ea.k);
    eval->add_option("--r", ea.r);
    eval->add_option("--m", ea.m);
    eval->add_option("--a", ea.a);
    eval->add_option("--x", ea.x);
    eval->add_option("--alpha", ea.alpha, "Ordinal literal, e.g. w^2*3+1");
    eval->add_option("--f", ea.f, "Parameter function");
    eval->add_option("--H", ea.H, "Outer function for sharpen");
    eval->add_option("--family", ea.family, "mul, id, towerpow:d, towerlin:d");
    eval->add_option("--variant", ea.variant, "ar-root, ph-div, diag-log");
    eval->add_option("--budget", ea.budget, "Hardy step budget");
    eval->add_option("--scan-cap", ea.scan_cap, "Inverse scan cap");
    eval->add_flag("--unguarded", ea.unguarded, "Evaluate bounds outside their guards");
    add_common(eval, common);

    std::string table_spec, table_out, table_format;
    auto* table = app.add_subcommand("table", "Run a parameter grid and emit CSV or JSON");
    table->add_option("spec", table_spec, "JSON grid spec")->required();
    table->add_option("--out", table_out, "Output file (default stdout)");
    table->add_option("--format", table_format, "csv or json");
    add_common(table, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    try {
        if (*compute) return run_compute(ca, common, out);
        if (*verify) return run_verify(va, common, out);
        if (*eval) return run_eval(eval_target, ea, common, out);
        if (*table) return run_table(table_spec, table_out, table_format, common, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NotAttained& e) {
        err << "not attained: " << e.what() << "\n";
        return kExitBudget;
    } catch (const GuardViolation& e) {
        err << "guard violation: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

}  // namespace rtl
