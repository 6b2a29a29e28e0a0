#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "halu/errors.hpp"
#include "halu/util.hpp"

namespace halu::corpus {

// One row of the CVE manifest.
struct CveEntry {
    std::string cve_id;
    std::string cwe_id;
    std::string program;
    std::string version_note;
    std::string patch_url;
};

struct MalformedRow : Error {
    int line_no;
    MalformedRow(int line, const std::string& detail)
        : Error("manifest line " + std::to_string(line) + ": " + detail), line_no(line) {}
};

struct InvalidId : Error {
    int line_no;
    InvalidId(int line, const std::string& id)
        : Error("manifest line " + std::to_string(line) + ": invalid id '" + id + "'"), line_no(line) {}
};

struct DuplicateCve : Error {
    std::string cve_id;
    explicit DuplicateCve(const std::string& id)
        : Error("duplicate cve_id: " + id), cve_id(id) {}
};

inline bool is_valid_cve_id(std::string_view id) {
    // CVE- + 4-digit year + - + 4 or more digits
    if (id.size() < 13 || id.substr(0, 4) != "CVE-")
        return false;
    for (size_t i = 4; i < 8; ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i])))
            return false;
    if (id[8] != '-')
        return false;
    size_t digits = 0;
    for (size_t i = 9; i < id.size(); ++i, ++digits)
        if (!std::isdigit(static_cast<unsigned char>(id[i])))
            return false;
    return digits >= 4;
}

inline bool is_valid_cwe_id(std::string_view id) {
    if (id.size() < 5 || id.substr(0, 4) != "CWE-")
        return false;
    for (size_t i = 4; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i])))
            return false;
    return true;
}

namespace detail {

// Comma-separated fields, double quotes around fields that embed commas,
// "" for a literal quote. No backslash escapes.
inline std::vector<std::string> split_csv_row(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty())
                throw MalformedRow(line_no, "quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw MalformedRow(line_no, "unterminated quote");
    fields.push_back(cur);
    return fields;
}

} // namespace detail

inline constexpr const char* kManifestHeader = "cve_id,cwe_id,program,version_note,patch_url";

// Parses the manifest document. Row order is preserved; duplicate CVE ids
// and pattern violations are rejected.
inline std::vector<CveEntry> parse_manifest(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty() || trim(lines[0]) != kManifestHeader)
        throw MalformedRow(1, "missing or wrong header (expected '" + std::string(kManifestHeader) + "')");

    std::vector<CveEntry> entries;
    std::set<std::string> seen;
    for (size_t i = 1; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        if (trim(lines[i]).empty())
            continue;
        auto fields = detail::split_csv_row(lines[i], line_no);
        if (fields.size() != 5)
            throw MalformedRow(line_no, "expected 5 columns, got " + std::to_string(fields.size()));
        CveEntry e{fields[0], fields[1], fields[2], fields[3], fields[4]};
        if (!is_valid_cve_id(e.cve_id))
            throw InvalidId(line_no, e.cve_id);
        if (!is_valid_cwe_id(e.cwe_id))
            throw InvalidId(line_no, e.cwe_id);
        if (e.patch_url.empty() ||
            (e.patch_url.rfind("http://", 0) != 0 && e.patch_url.rfind("https://", 0) != 0))
            throw MalformedRow(line_no, "patch_url must be a non-empty absolute URL");
        if (!seen.insert(e.cve_id).second)
            throw DuplicateCve(e.cve_id);
        entries.push_back(std::move(e));
    }
    return entries;
}

inline std::vector<CveEntry> load_manifest(const std::filesystem::path& path) {
    return parse_manifest(read_file(path));
}

} // namespace halu::corpus
