#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "halu/diff.hpp"
#include "halu/extract.hpp"
#include "halu/manifest.hpp"

namespace halu::corpus {

enum class SampleKind { Vulnerable, Fixed };

inline const char* to_string(SampleKind k) {
    return k == SampleKind::Vulnerable ? "vulnerable" : "fixed";
}

inline SampleKind sample_kind_from_string(const std::string& s) {
    if (s == "vulnerable")
        return SampleKind::Vulnerable;
    if (s == "fixed")
        return SampleKind::Fixed;
    throw Error("unknown sample kind: " + s);
}

// One labeled code unit: all functions a patch touches, on one side of it.
struct Sample {
    std::string sample_id; // cve_id + ":vuln" | ":fixed"
    std::string cve_id;
    std::string cwe_id;
    SampleKind kind = SampleKind::Vulnerable;
    std::vector<FunctionSpan> functions; // file order, then line order
    size_t loc = 0;
    std::string description; // empty for fixed kind
};

struct SamplePair {
    Sample vulnerable;
    Sample fixed;
    std::vector<std::string> warnings;
};

struct NoTouchedFunction : Error {
    std::string file;
    explicit NoTouchedFunction(const std::string& f)
        : Error("no touched function reconstructable for '" + f + "'"), file(f) {}
};

inline std::string sample_id_for(const std::string& cve_id, SampleKind kind) {
    return cve_id + (kind == SampleKind::Vulnerable ? ":vuln" : ":fixed");
}

// The attached-code text for prompts: file groups in order, one provenance
// comment per file, functions separated by a blank line.
inline std::string sample_text(const Sample& sample) {
    std::string out;
    std::string current_file;
    for (const auto& fn : sample.functions) {
        if (fn.file_path != current_file) {
            if (!out.empty())
                out += "\n\n";
            out += "// file: " + fn.file_path;
            current_file = fn.file_path;
        }
        out += "\n";
        out += fn.text;
        out += "\n";
    }
    return out;
}

namespace detail {

inline bool spans_intersect(size_t a_lo, size_t a_hi, size_t b_lo, size_t b_hi) {
    return a_lo <= b_hi && b_lo <= a_hi;
}

// Touched = intersecting any hunk's region on the given side. A pure
// insertion (len 0) touches its anchor line.
inline std::vector<FunctionSpan> touched_spans(const std::vector<FunctionSpan>& spans,
                                               const std::vector<Hunk>& hunks, bool old_side) {
    std::vector<FunctionSpan> out;
    for (const auto& span : spans) {
        bool touched = false;
        for (const auto& h : hunks) {
            size_t start = old_side ? h.old_start : h.new_start;
            size_t len = old_side ? h.old_len : h.new_len;
            size_t lo = len == 0 ? std::max<size_t>(start, 1) : start;
            size_t hi = len == 0 ? start + 1 : start + len - 1;
            if (spans_intersect(span.start_line, span.end_line, lo, hi)) {
                touched = true;
                break;
            }
        }
        if (touched)
            out.push_back(span);
    }
    return out;
}

inline std::string hunk_side_text(const std::vector<Hunk>& hunks, bool old_side) {
    std::vector<std::string> lines;
    for (const auto& h : hunks) {
        for (const auto& hl : h.lines) {
            bool keep = hl.marker == LineMarker::Context ||
                        (old_side ? hl.marker == LineMarker::Removed : hl.marker == LineMarker::Added);
            if (keep)
                lines.push_back(hl.text);
        }
    }
    return join_lines(lines);
}

// Fallback reconstruction from hunk lines alone. Complete functions in the
// region are preferred; otherwise the whole region stands in as one span.
inline std::vector<FunctionSpan> fallback_spans(const std::string& path,
                                                const std::vector<Hunk>& hunks, bool old_side) {
    std::string region = hunk_side_text(hunks, old_side);
    if (trim(region).empty())
        throw NoTouchedFunction(path);
    auto spans = extract_functions(region, path);
    if (!spans.empty())
        return spans;
    FunctionSpan span;
    span.file_path = path;
    span.name = "<region>";
    span.start_line = 1;
    span.end_line = split_lines(region).size();
    span.text = region;
    return {span};
}

} // namespace detail

// Builds the vulnerable/fixed pair for one CVE record. With full pre-image
// sources the touched functions are extracted from both sides of the patch;
// without them the pair is rebuilt from hunk context alone (fallback mode).
inline SamplePair build_samples(const CveEntry& entry, const PatchDocument& patch,
                                const std::map<std::string, std::string>& pre_sources,
                                const std::string& description) {
    SamplePair pair;
    pair.vulnerable.cve_id = entry.cve_id;
    pair.vulnerable.cwe_id = entry.cwe_id;
    pair.vulnerable.kind = SampleKind::Vulnerable;
    pair.vulnerable.sample_id = sample_id_for(entry.cve_id, SampleKind::Vulnerable);
    pair.vulnerable.description = description;
    pair.fixed.cve_id = entry.cve_id;
    pair.fixed.cwe_id = entry.cwe_id;
    pair.fixed.kind = SampleKind::Fixed;
    pair.fixed.sample_id = sample_id_for(entry.cve_id, SampleKind::Fixed);

    std::vector<const FilePatch*> files;
    for (const auto& f : patch.files)
        files.push_back(&f);
    std::sort(files.begin(), files.end(),
              [](const FilePatch* a, const FilePatch* b) { return a->path < b->path; });

    bool any_change = false;
    for (const FilePatch* fp : files) {
        for (const auto& h : fp->hunks)
            if (h.count(LineMarker::Removed) + h.count(LineMarker::Added) > 0)
                any_change = true;

        auto it = pre_sources.find(fp->path);
        if (it != pre_sources.end()) {
            const std::string& pre_text = it->second;
            std::string post_text = apply_hunks(pre_text, fp->hunks, fp->path);
            auto pre_touched = detail::touched_spans(extract_functions(pre_text, fp->path), fp->hunks, true);
            auto post_touched = detail::touched_spans(extract_functions(post_text, fp->path), fp->hunks, false);
            pair.vulnerable.functions.insert(pair.vulnerable.functions.end(), pre_touched.begin(), pre_touched.end());
            pair.fixed.functions.insert(pair.fixed.functions.end(), post_touched.begin(), post_touched.end());
        } else {
            auto pre_spans = detail::fallback_spans(fp->path, fp->hunks, true);
            auto post_spans = detail::fallback_spans(fp->path, fp->hunks, false);
            pair.vulnerable.functions.insert(pair.vulnerable.functions.end(), pre_spans.begin(), pre_spans.end());
            pair.fixed.functions.insert(pair.fixed.functions.end(), post_spans.begin(), post_spans.end());
        }
    }

    if (pair.vulnerable.functions.empty() || pair.fixed.functions.empty())
        throw NoTouchedFunction(files.empty() ? std::string() : files.front()->path);

    for (const auto& fn : pair.vulnerable.functions)
        pair.vulnerable.loc += fn.line_count();
    for (const auto& fn : pair.fixed.functions)
        pair.fixed.loc += fn.line_count();

    if (!any_change)
        pair.warnings.push_back("NoChange: patch for " + entry.cve_id + " is pure context");
    return pair;
}

// --- sample store (JSON Lines) ---

inline nlohmann::json sample_to_json(const Sample& s) {
    nlohmann::json files = nlohmann::json::array();
    std::string current;
    for (const auto& fn : s.functions) {
        if (files.empty() || fn.file_path != current) {
            current = fn.file_path;
            files.push_back({{"path", fn.file_path}, {"functions", nlohmann::json::array()}});
        }
        files.back()["functions"].push_back({{"name", fn.name},
                                             {"start_line", fn.start_line},
                                             {"end_line", fn.end_line},
                                             {"text", fn.text}});
    }
    return nlohmann::json{{"sample_id", s.sample_id}, {"cve_id", s.cve_id},
                          {"cwe_id", s.cwe_id},       {"kind", to_string(s.kind)},
                          {"description", s.description}, {"files", files},
                          {"loc", s.loc}};
}

inline Sample sample_from_json(const nlohmann::json& j) {
    Sample s;
    s.sample_id = j.at("sample_id").get<std::string>();
    s.cve_id = j.at("cve_id").get<std::string>();
    s.cwe_id = j.at("cwe_id").get<std::string>();
    s.kind = sample_kind_from_string(j.at("kind").get<std::string>());
    s.description = j.at("description").get<std::string>();
    s.loc = j.at("loc").get<size_t>();
    for (const auto& file : j.at("files")) {
        for (const auto& fn : file.at("functions")) {
            FunctionSpan span;
            span.file_path = file.at("path").get<std::string>();
            span.name = fn.at("name").get<std::string>();
            span.start_line = fn.at("start_line").get<size_t>();
            span.end_line = fn.at("end_line").get<size_t>();
            span.text = fn.at("text").get<std::string>();
            s.functions.push_back(std::move(span));
        }
    }
    return s;
}

inline void save_samples(const std::filesystem::path& path, const std::vector<Sample>& samples) {
    std::string out;
    for (const auto& s : samples) {
        out += sample_to_json(s).dump();
        out += '\n';
    }
    write_file(path, out);
}

inline std::vector<Sample> load_samples(const std::filesystem::path& path) {
    std::vector<Sample> samples;
    for (const auto& line : split_lines(read_file(path))) {
        if (trim(line).empty())
            continue;
        samples.push_back(sample_from_json(nlohmann::json::parse(line)));
    }
    return samples;
}

} // namespace halu::corpus
