#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "rtl/colouring.hpp"
#include "rtl/reduction.hpp"
#include "rtl/search.hpp"

namespace rtl {

using Json = nlohmann::json;

inline constexpr const char* kCertificateSchema = "rtl.certificate/1";
inline constexpr const char* kRecordSchema = "rtl.record/1";
inline constexpr const char* kTableSchema = "rtl.table/1";

/// The parameter function is stored by name and rebuilt with parse_function,
/// so only functions from the spec grammar round-trip.
Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json outcome_to_json(const SearchOutcome& out);
SearchOutcome outcome_from_json(const Json& j);

Json report_to_json(const TransferReport& rep);

/// Writes the certificate as JSON; reading re-verifies it and throws InvalidArgument if it is not bad.
void write_certificate(const std::filesystem::path& path, const Certificate& cert);
Certificate read_certificate(const std::filesystem::path& path);

/// Write to a sibling temp file, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

struct ResultRecord {
    std::string command;
    std::map<std::string, std::string> params;
    Json outcome;
    std::string tool_version;
    std::string timestamp;
};

Json record_to_json(const ResultRecord& r);
ResultRecord record_from_json(const Json& j);

std::string tool_version();
/// Current UTC time, ISO-8601 with seconds.
std::string utc_timestamp();

/// Results keyed by (command, canonical params, tool version).
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// RTL_CACHE_DIR, else $XDG_CACHE_HOME/rtl, else $HOME/.cache/rtl, else ./.rtl-cache.
    static std::filesystem::path default_dir();

    static std::string key(const std::string& command, const std::map<std::string, std::string>& params);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::filesystem::path path_for(const std::string& key) const;

    /// Absent when missing, unreadable, or stale.
    std::optional<ResultRecord> load(const std::string& command, const std::map<std::string, std::string>& params) const;
    void store(const ResultRecord& record) const;

private:
    std::filesystem::path dir_;
};

}  // namespace rtl
