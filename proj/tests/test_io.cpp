#include <doctest.h>

#include <random>

#include "rtl/errors.hpp"
#include "rtl/fnspec.hpp"
#include "rtl/io.hpp"
#include "temp_dir.hpp"

using namespace rtl;

namespace {

SearchConfig small(Nat cap) {
    SearchConfig c;
    c.cap = cap;
    return c;
}

}  // namespace

TEST_CASE("certificate JSON round trip") {
    const std::vector<Params> ps{
        {Kind::AR, 1, 1, 0, 0, parse_function("const:2")},
        {Kind::AR, 2, 1, 0, 0, parse_function("halve")},
        {Kind::PH, 2, 2, 0, 0, parse_function("const:3")},
        {Kind::PH, 1, 2, 1, 0, parse_function("id")},
        {Kind::KM, 2, 1, 3, 0, parse_function("const:1")},
    };
    for (const auto& p : ps) {
        const auto out = ramsey_number(p, small(30));
        REQUIRE(out.lower_certificate.has_value());
        const Json j = certificate_to_json(*out.lower_certificate);
        CHECK(j.at("schema") == kCertificateSchema);
        const Certificate back = certificate_from_json(j);
        CHECK(back.R == out.lower_certificate->R);
        CHECK(back.colouring == out.lower_certificate->colouring);
        CHECK(back.params.f.name() == p.f.name());
        CHECK(certificate_to_json(back).dump() == j.dump());
        CHECK(verify_certificate(back));
    }
}

TEST_CASE("certificate files re-verify on load") {
    TempDir tmp;
    const auto out = ar_number(1, 1, parse_function("const:2"), small(10));
    const auto path = tmp.path() / "cert.json";
    write_certificate(path, *out.lower_certificate);
    CHECK(read_certificate(path).colouring == out.lower_certificate->colouring);

    Json j = certificate_to_json(*out.lower_certificate);
    j["colouring"] = "AR 1 0 3 1\n0 : 0\n1 : 0\n2 : 0\n3 : 0\n";
    write_file_atomic(path, j.dump());
    CHECK_THROWS_AS(read_certificate(path), InvalidArgument);
    write_file_atomic(path, "{ not json");
    CHECK_THROWS_AS(read_certificate(path), InvalidArgument);
    CHECK_THROWS(read_certificate(tmp.path() / "missing.json"));
}

TEST_CASE("outcome JSON round trip") {
    const auto out = ph_number(2, 0, 2, parse_function("const:3"), small(10));
    const Json j = outcome_to_json(out);
    const auto back = outcome_from_json(j);
    CHECK(back.value == out.value);
    CHECK(back.status == out.status);
    CHECK(back.nodes_explored == out.nodes_explored);
    CHECK(outcome_to_json(back) == j);
    SearchOutcome empty;
    empty.status = SearchStatus::budget_exhausted;
    CHECK(outcome_from_json(outcome_to_json(empty)).status == SearchStatus::budget_exhausted);
    CHECK(outcome_to_json(empty).at("value").is_null());
}

TEST_CASE("records and the cache") {
    TempDir tmp;
    ResultCache cache(tmp.path() / "cache");
    const std::map<std::string, std::string> params{{"d", "1"}, {"kind", "ar"}};
    CHECK_FALSE(cache.load("compute", params).has_value());
    const ResultRecord rec{"compute", params, Json{{"x", 1}}, tool_version(), utc_timestamp()};
    cache.store(rec);
    const auto hit = cache.load("compute", params);
    REQUIRE(hit.has_value());
    CHECK(hit->outcome == rec.outcome);
    CHECK(hit->timestamp == rec.timestamp);
    CHECK_FALSE(cache.load("verify", params).has_value());
    CHECK_FALSE(cache.load("compute", {{"d", "2"}, {"kind", "ar"}}).has_value());
    CHECK(ResultCache::key("compute", params) != ResultCache::key("compute", {{"d", "2"}, {"kind", "ar"}}));
    CHECK(ResultCache::key("compute", params).size() == 16);

    // A stale version is ignored.
    ResultRecord old = rec;
    old.tool_version = "0.0.0-old";
    write_file_atomic(cache.path_for(ResultCache::key("compute", params)), record_to_json(old).dump());
    CHECK_FALSE(cache.load("compute", params).has_value());
    write_file_atomic(cache.path_for(ResultCache::key("compute", params)), "garbage");
    CHECK_FALSE(cache.load("compute", params).has_value());
}

TEST_CASE("record JSON") {
    const ResultRecord rec{"compute", {{"a", "1"}}, Json{{"v", 2}}, "1.2.3", "2020-01-01T00:00:00Z"};
    const Json j = record_to_json(rec);
    CHECK(j.at("schema") == kRecordSchema);
    const auto back = record_from_json(j);
    CHECK(back.command == rec.command);
    CHECK(back.params == rec.params);
    CHECK(back.outcome == rec.outcome);
    CHECK(back.tool_version == rec.tool_version);
    CHECK(back.timestamp == rec.timestamp);
    CHECK(utc_timestamp().size() == 20);
}

TEST_CASE("atomic writes") {
    TempDir tmp;
    const auto p = tmp.path() / "sub" / "file.txt";
    write_file_atomic(p, "one");
    write_file_atomic(p, "two");
    CHECK(read_file(p) == "two");
    std::size_t n = 0;
    for (const auto& e : std::filesystem::directory_iterator(p.parent_path())) {
        (void)e;
        ++n;
    }
    CHECK(n == 1);
}

TEST_CASE("transfer report JSON") {
    TransferReport rep;
    rep.kind = Kind::AR;
    rep.sources = 3;
    rep.failures = 1;
    rep.counterexamples.push_back({2, {0, 1, 2}, "why", "AR 1 0 0 1\n0 : 0\n"});
    const Json j = report_to_json(rep);
    CHECK(j.at("failures") == 1);
    CHECK(j.at("counterexamples").at(0).at("reason") == "why");
    CHECK(j.at("counterexamples").at(0).at("points") == Json::array({0, 1, 2}));
}
