#include <catch2/catch_amalgamated.hpp>

#include "halu/manifest.hpp"

using namespace halu;
using namespace halu::corpus;

static const char* kHeader = "cve_id,cwe_id,program,version_note,patch_url\n";

TEST_CASE("parse_manifest accepts a well-formed row") {
    std::string text = std::string(kHeader) +
        "CVE-2018-1000657,CWE-119,standard library in rust,before 1.22.0,https://example.com/p\n";
    auto entries = parse_manifest(text);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].cve_id == "CVE-2018-1000657");
    CHECK(entries[0].cwe_id == "CWE-119");
    CHECK(entries[0].program == "standard library in rust");
    CHECK(entries[0].version_note == "before 1.22.0");
}

TEST_CASE("parse_manifest on an empty data section") {
    auto entries = parse_manifest(kHeader);
    CHECK(entries.empty());
}

TEST_CASE("parse_manifest preserves row order and quoting") {
    std::string text = std::string(kHeader) +
        "CVE-2023-22466,CWE-665,Tokio,\"1.18.4,1.20.3,1.23.1\",https://example.com/a\n"
        "CVE-2024-21491,CWE-288,svix,before 1.17.0,https://example.com/b\n";
    auto entries = parse_manifest(text);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].version_note == "1.18.4,1.20.3,1.23.1");
    CHECK(entries[1].cve_id == "CVE-2024-21491");
}

TEST_CASE("parse_manifest rejects malformed input") {
    SECTION("wrong column count") {
        std::string text = std::string(kHeader) + "CVE-2020-0001,CWE-119,prog,note\n";
        CHECK_THROWS_AS(parse_manifest(text), MalformedRow);
    }
    SECTION("bad cve pattern") {
        std::string text = std::string(kHeader) + "CVE-20-1,CWE-119,p,n,https://e.com\n";
        CHECK_THROWS_AS(parse_manifest(text), InvalidId);
    }
    SECTION("bad cwe pattern") {
        std::string text = std::string(kHeader) + "CVE-2020-12345,CWE-x,p,n,https://e.com\n";
        CHECK_THROWS_AS(parse_manifest(text), InvalidId);
    }
    SECTION("short cve number part") {
        std::string text = std::string(kHeader) + "CVE-2020-123,CWE-119,p,n,https://e.com\n";
        CHECK_THROWS_AS(parse_manifest(text), InvalidId);
    }
    SECTION("relative patch url") {
        std::string text = std::string(kHeader) + "CVE-2020-12345,CWE-119,p,n,patches/x\n";
        CHECK_THROWS_AS(parse_manifest(text), MalformedRow);
    }
    SECTION("duplicate cve id") {
        std::string text = std::string(kHeader) +
            "CVE-2020-12345,CWE-119,p,n,https://e.com\n"
            "CVE-2020-12345,CWE-125,q,m,https://e.com/2\n";
        CHECK_THROWS_AS(parse_manifest(text), DuplicateCve);
    }
    SECTION("missing header") {
        CHECK_THROWS_AS(parse_manifest("CVE-2020-12345,CWE-119,p,n,https://e.com\n"), MalformedRow);
    }
}

TEST_CASE("shipped manifest loads with the expected corpus shape") {
    auto entries = load_manifest(std::string(HALU_REPO_DIR) + "/data/manifest.csv");
    REQUIRE(entries.size() == 81);
    std::set<std::string> programs;
    std::set<std::string> cwes;
    for (const auto& e : entries) {
        programs.insert(e.program);
        cwes.insert(e.cwe_id);
    }
    CHECK(programs.size() == 54);
    CHECK(cwes.size() == 44);
}
