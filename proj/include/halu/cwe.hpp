#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "halu/manifest.hpp"
#include "halu/sample.hpp"

namespace halu::corpus {

enum class CweCategory { MemorySafety, InputValidation, ConcurrencyIssue, SecurityHandling };

inline const char* to_string(CweCategory c) {
    switch (c) {
    case CweCategory::MemorySafety: return "MemorySafety";
    case CweCategory::InputValidation: return "InputValidation";
    case CweCategory::ConcurrencyIssue: return "ConcurrencyIssue";
    case CweCategory::SecurityHandling: return "SecurityHandling";
    }
    return "?";
}

struct UnknownCwe : Error {
    std::string cwe_id;
    explicit UnknownCwe(const std::string& id) : Error("unknown CWE id: " + id), cwe_id(id) {}
};

// Total over the 44 CWE ids the corpus covers; anything else is rejected.
inline const std::map<std::string, CweCategory>& cwe_category_map() {
    static const std::map<std::string, CweCategory> table = {
        {"CWE-119", CweCategory::MemorySafety},    {"CWE-125", CweCategory::MemorySafety},
        {"CWE-131", CweCategory::MemorySafety},    {"CWE-190", CweCategory::MemorySafety},
        {"CWE-191", CweCategory::MemorySafety},    {"CWE-415", CweCategory::MemorySafety},
        {"CWE-416", CweCategory::MemorySafety},    {"CWE-475", CweCategory::MemorySafety},
        {"CWE-665", CweCategory::MemorySafety},    {"CWE-787", CweCategory::MemorySafety},
        {"CWE-824", CweCategory::MemorySafety},    {"CWE-908", CweCategory::MemorySafety},
        {"CWE-020", CweCategory::InputValidation}, {"CWE-022", CweCategory::InputValidation},
        {"CWE-059", CweCategory::InputValidation}, {"CWE-079", CweCategory::InputValidation},
        {"CWE-088", CweCategory::InputValidation}, {"CWE-113", CweCategory::InputValidation},
        {"CWE-134", CweCategory::InputValidation}, {"CWE-200", CweCategory::InputValidation},
        {"CWE-203", CweCategory::InputValidation}, {"CWE-287", CweCategory::InputValidation},
        {"CWE-288", CweCategory::InputValidation}, {"CWE-346", CweCategory::InputValidation},
        {"CWE-427", CweCategory::InputValidation}, {"CWE-444", CweCategory::InputValidation},
        {"CWE-276", CweCategory::ConcurrencyIssue},{"CWE-362", CweCategory::ConcurrencyIssue},
        {"CWE-400", CweCategory::ConcurrencyIssue},{"CWE-617", CweCategory::ConcurrencyIssue},
        {"CWE-662", CweCategory::ConcurrencyIssue},{"CWE-668", CweCategory::ConcurrencyIssue},
        {"CWE-674", CweCategory::ConcurrencyIssue},{"CWE-703", CweCategory::ConcurrencyIssue},
        {"CWE-770", CweCategory::ConcurrencyIssue},
        {"CWE-248", CweCategory::SecurityHandling},{"CWE-252", CweCategory::SecurityHandling},
        {"CWE-347", CweCategory::SecurityHandling},{"CWE-670", CweCategory::SecurityHandling},
        {"CWE-682", CweCategory::SecurityHandling},{"CWE-701", CweCategory::SecurityHandling},
        {"CWE-754", CweCategory::SecurityHandling},{"CWE-755", CweCategory::SecurityHandling},
        {"CWE-758", CweCategory::SecurityHandling},
    };
    return table;
}

inline CweCategory categorize_cwe(const std::string& cwe_id) {
    const auto& table = cwe_category_map();
    auto it = table.find(cwe_id);
    if (it == table.end())
        throw UnknownCwe(cwe_id);
    return it->second;
}

struct DatasetStats {
    size_t n_records = 0;
    size_t n_functions = 0;
    size_t n_loc = 0;
    size_t n_cwes = 0;
    size_t n_programs = 0;
    std::map<std::string, size_t> per_cwe_counts;
};

// Corpus census. Functions and LOC are counted over vulnerable samples,
// per record (shared functions are not deduplicated across records); CWE
// counts are per CVE record. Empty input yields an all-zero census.
inline DatasetStats census(const std::vector<Sample>& samples, const std::vector<CveEntry>& entries) {
    DatasetStats stats;
    stats.n_records = entries.size();
    std::set<std::string> programs;
    for (const auto& e : entries) {
        ++stats.per_cwe_counts[e.cwe_id];
        programs.insert(e.program);
    }
    stats.n_cwes = stats.per_cwe_counts.size();
    stats.n_programs = programs.size();
    for (const auto& s : samples) {
        if (s.kind != SampleKind::Vulnerable)
            continue;
        stats.n_functions += s.functions.size();
        stats.n_loc += s.loc;
    }
    return stats;
}

} // namespace halu::corpus
