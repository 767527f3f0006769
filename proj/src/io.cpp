#include "rtl/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "rtl/errors.hpp"
#include "rtl/fnspec.hpp"

#ifndef RTL_VERSION
#define RTL_VERSION "0.0.0"
#endif

namespace rtl {

namespace {

template <class T>
T field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InvalidArgument(std::string("missing JSON field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const Json::exception&) {
        throw InvalidArgument(std::string("bad JSON field '") + name + "'");
    }
}

}  // namespace

Json certificate_to_json(const Certificate& cert) {
    const Params& p = cert.params;
    return Json{{"schema", kCertificateSchema}, {"kind", std::string(to_string(p.kind))},
                {"d", p.d},                     {"r", p.r},
                {"m", p.m},                     {"a", p.a},
                {"f", p.f.name()},              {"R", cert.R},
                {"colouring", to_text(cert.colouring)}};
}

Certificate certificate_from_json(const Json& j) {
    if (field<std::string>(j, "schema") != kCertificateSchema) throw InvalidArgument("unsupported certificate schema");
    Params p;
    p.kind = parse_kind(field<std::string>(j, "kind"));
    p.d = field<unsigned>(j, "d");
    p.r = field<Nat>(j, "r");
    p.m = field<Nat>(j, "m");
    p.a = field<Nat>(j, "a");
    p.f = parse_function(field<std::string>(j, "f"));
    const Nat R = field<Nat>(j, "R");
    Colouring c = parse_colouring(field<std::string>(j, "colouring"));
    if (kind_of(c) != p.kind) throw InvalidArgument("certificate kind does not match its colouring");
    return {std::move(p), R, std::move(c)};
}

Json outcome_to_json(const SearchOutcome& out) {
    Json j{{"status", std::string(to_string(out.status))}, {"nodes_explored", out.nodes_explored}};
    j["value"] = out.value ? Json(*out.value) : Json(nullptr);
    j["lower_certificate"] = out.lower_certificate ? certificate_to_json(*out.lower_certificate) : Json(nullptr);
    return j;
}

SearchOutcome outcome_from_json(const Json& j) {
    SearchOutcome out;
    out.status = parse_status(field<std::string>(j, "status"));
    out.nodes_explored = field<std::uint64_t>(j, "nodes_explored");
    if (j.contains("value") && !j["value"].is_null()) out.value = field<Nat>(j, "value");
    if (j.contains("lower_certificate") && !j["lower_certificate"].is_null())
        out.lower_certificate = certificate_from_json(j["lower_certificate"]);
    return out;
}

Json report_to_json(const TransferReport& rep) {
    Json ces = Json::array();
    for (const auto& ce : rep.counterexamples)
        ces.push_back({{"source", ce.source}, {"points", ce.points}, {"reason", ce.reason}, {"colouring", ce.colouring}});
    return Json{{"kind", std::string(to_string(rep.kind))},
                {"sources", rep.sources},
                {"cases", rep.cases},
                {"premises", rep.premises},
                {"sampled", rep.sampled},
                {"levels_verified", rep.levels_verified},
                {"failures", rep.failures},
                {"counterexamples", ces}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot write " + tmp.string());
        os << contents;
        os.flush();
        if (!os) throw Error("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_certificate(const std::filesystem::path& path, const Certificate& cert) {
    write_file_atomic(path, certificate_to_json(cert).dump(2) + "\n");
}

Certificate read_certificate(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw InvalidArgument("certificate is not valid JSON: " + std::string(e.what()));
    }
    Certificate cert = certificate_from_json(j);
    if (!verify_certificate(cert)) throw InvalidArgument("certificate does not verify: " + path.string());
    return cert;
}

Json record_to_json(const ResultRecord& r) {
    return Json{{"schema", kRecordSchema},  {"command", r.command},
                {"params", r.params},       {"outcome", r.outcome},
                {"tool_version", r.tool_version}, {"timestamp", r.timestamp}};
}

ResultRecord record_from_json(const Json& j) {
    if (field<std::string>(j, "schema") != kRecordSchema) throw InvalidArgument("unsupported record schema");
    ResultRecord r;
    r.command = field<std::string>(j, "command");
    r.params = field<std::map<std::string, std::string>>(j, "params");
    r.outcome = j.at("outcome");
    r.tool_version = field<std::string>(j, "tool_version");
    r.timestamp = field<std::string>(j, "timestamp");
    return r;
}

std::string tool_version() { return RTL_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path ResultCache::default_dir() {
    if (const char* dir = std::getenv("RTL_CACHE_DIR"); dir && *dir) return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "rtl";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "rtl";
    return ".rtl-cache";
}

std::string ResultCache::key(const std::string& command, const std::map<std::string, std::string>& params) {
    std::string canon = command + '\n';
    for (const auto& [k, v] : params) canon += k + '=' + v + '\n';
    canon += tool_version();
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::filesystem::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<ResultRecord> ResultCache::load(const std::string& command,
                                              const std::map<std::string, std::string>& params) const {
    const auto path = path_for(key(command, params));
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
        ResultRecord r = record_from_json(Json::parse(read_file(path)));
        // A hash collision or a record from another version is a miss.
        if (r.command != command || r.params != params || r.tool_version != tool_version()) return std::nullopt;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ResultCache::store(const ResultRecord& record) const {
    write_file_atomic(path_for(key(record.command, record.params)), record_to_json(record).dump(2) + "\n");
}

}  // namespace rtl
