#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "halu/errors.hpp"
#include "halu/util.hpp"

namespace halu::corpus {

enum class LineMarker { Context, Removed, Added };

struct HunkLine {
    LineMarker marker;
    std::string text;
};

// One contiguous changed region. Line numbers are 1-based positions in the
// old/new file; old_len == 0 marks a pure insertion after line old_start.
struct Hunk {
    size_t old_start = 0;
    size_t old_len = 0;
    size_t new_start = 0;
    size_t new_len = 0;
    std::vector<HunkLine> lines;

    size_t count(LineMarker m) const {
        size_t n = 0;
        for (const auto& l : lines)
            if (l.marker == m)
                ++n;
        return n;
    }
};

struct FilePatch {
    std::string path;
    std::vector<Hunk> hunks;
};

struct PatchDocument {
    std::string cve_id;
    std::vector<FilePatch> files;
    std::string raw_text;
};

struct NoHunks : Error {
    NoHunks() : Error("patch contains no hunks") {}
};

struct CountMismatch : Error {
    std::string file;
    size_t hunk_index;
    CountMismatch(const std::string& f, size_t idx)
        : Error("hunk " + std::to_string(idx) + " in '" + f + "': stated lengths disagree with marker counts"),
          file(f), hunk_index(idx) {}
};

struct HunkAnchorMismatch : Error {
    std::string file;
    size_t hunk_index;
    HunkAnchorMismatch(const std::string& f, size_t idx, size_t line)
        : Error("hunk " + std::to_string(idx) + " in '" + f + "': pre-image mismatch at line " + std::to_string(line)),
          file(f), hunk_index(idx) {}
};

namespace detail {

// "@@ -a[,b] +c[,d] @@ ..." -> (a, b, c, d); lengths default to 1.
inline bool parse_hunk_header(const std::string& line, Hunk& hunk) {
    if (line.rfind("@@ -", 0) != 0)
        return false;
    size_t i = 4;
    auto read_num = [&](size_t& out) {
        if (i >= line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
            return false;
        size_t v = 0;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
            v = v * 10 + static_cast<size_t>(line[i] - '0');
            ++i;
        }
        out = v;
        return true;
    };
    if (!read_num(hunk.old_start))
        return false;
    hunk.old_len = 1;
    if (i < line.size() && line[i] == ',') {
        ++i;
        if (!read_num(hunk.old_len))
            return false;
    }
    if (i + 2 >= line.size() || line[i] != ' ' || line[i + 1] != '+')
        return false;
    i += 2;
    if (!read_num(hunk.new_start))
        return false;
    hunk.new_len = 1;
    if (i < line.size() && line[i] == ',') {
        ++i;
        if (!read_num(hunk.new_len))
            return false;
    }
    return i + 3 <= line.size() && line.compare(i, 3, " @@") == 0;
}

inline std::string strip_diff_prefix(std::string path) {
    if (path.rfind("a/", 0) == 0 || path.rfind("b/", 0) == 0)
        path = path.substr(2);
    return path;
}

// The path part of a "--- " / "+++ " header, without any tab-separated
// timestamp suffix.
inline std::string header_path(const std::string& line) {
    std::string rest = line.substr(4);
    size_t tab = rest.find('\t');
    if (tab != std::string::npos)
        rest = rest.substr(0, tab);
    return strip_diff_prefix(std::string(trim(rest)));
}

} // namespace detail

// Parses a unified diff. Commit metadata, CVE prose, and other unrecognized
// preamble lines are skipped. Hunk bodies must match their stated lengths.
inline PatchDocument parse_unified_diff(const std::string& raw) {
    PatchDocument doc;
    doc.raw_text = raw;
    auto lines = split_lines(raw);

    std::string current_path;
    std::string pending_old_path;
    FilePatch* current_file = nullptr;

    auto file_for = [&](const std::string& path) -> FilePatch* {
        for (auto& f : doc.files)
            if (f.path == path)
                return &f;
        doc.files.push_back(FilePatch{path, {}});
        return &doc.files.back();
    };

    size_t i = 0;
    while (i < lines.size()) {
        const std::string& line = lines[i];
        if (line.rfind("--- ", 0) == 0) {
            pending_old_path = detail::header_path(line);
            ++i;
            continue;
        }
        if (line.rfind("+++ ", 0) == 0) {
            std::string new_path = detail::header_path(line);
            current_path = (new_path == "/dev/null") ? pending_old_path : new_path;
            current_file = nullptr;
            ++i;
            continue;
        }

        Hunk hunk;
        if (!detail::parse_hunk_header(line, hunk)) {
            ++i; // preamble / unrecognized line
            continue;
        }
        ++i;
        size_t old_seen = 0;
        size_t new_seen = 0;
        if (!current_file)
            current_file = file_for(current_path);
        size_t hunk_index = current_file->hunks.size();
        while (old_seen < hunk.old_len || new_seen < hunk.new_len) {
            if (i >= lines.size())
                throw CountMismatch(current_file->path, hunk_index);
            const std::string& body = lines[i];
            if (body.size() >= 1 && body[0] == '\\') {
                ++i; // "\ No newline at end of file"
                continue;
            }
            char m = body.empty() ? ' ' : body[0];
            std::string text = body.empty() ? std::string() : body.substr(1);
            if (m == ' ') {
                ++old_seen;
                ++new_seen;
                hunk.lines.push_back({LineMarker::Context, text});
            } else if (m == '-') {
                ++old_seen;
                hunk.lines.push_back({LineMarker::Removed, text});
            } else if (m == '+') {
                ++new_seen;
                hunk.lines.push_back({LineMarker::Added, text});
            } else {
                throw CountMismatch(current_file->path, hunk_index);
            }
            if (old_seen > hunk.old_len || new_seen > hunk.new_len)
                throw CountMismatch(current_file->path, hunk_index);
            ++i;
        }
        current_file->hunks.push_back(std::move(hunk));
    }

    // Drop file sections that ended up empty (headers without hunks).
    std::erase_if(doc.files, [](const FilePatch& f) { return f.hunks.empty(); });
    if (doc.files.empty())
        throw NoHunks();
    return doc;
}

// The "Description:" block some patch records embed ahead of the diff.
// Returns empty when absent.
inline std::string extract_description(const std::string& raw) {
    auto lines = split_lines(raw);
    std::string out;
    bool in_desc = false;
    for (const auto& line : lines) {
        if (!in_desc) {
            if (trim(line) == "Description:")
                in_desc = true;
            continue;
        }
        auto t = trim(line);
        if (t == "--" || line.rfind("--- ", 0) == 0 || line.rfind("+++ ", 0) == 0 ||
            line.rfind("@@ ", 0) == 0 || line.rfind("diff ", 0) == 0)
            break;
        if (!out.empty())
            out += '\n';
        out += line;
    }
    return std::string(trim(out));
}

// Applies a file's hunks to its pre-image. `line_offset` rebases hunk line
// numbers when `pre_text` is an extracted fragment rather than the whole
// file (offset = fragment's first line - 1 in file coordinates).
inline std::string apply_hunks(const std::string& pre_text, const std::vector<Hunk>& hunks,
                               const std::string& file_path = "", size_t line_offset = 0) {
    bool trailing_newline = !pre_text.empty() && pre_text.back() == '\n';
    auto pre = split_lines(pre_text);
    std::vector<std::string> out;
    size_t cursor = 0; // 0-based index of next unconsumed pre line

    std::vector<const Hunk*> ordered;
    for (const auto& h : hunks)
        ordered.push_back(&h);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Hunk* a, const Hunk* b) { return a->old_start < b->old_start; });

    for (size_t hi = 0; hi < ordered.size(); ++hi) {
        const Hunk& h = *ordered[hi];
        // For old_len == 0 the hunk inserts after line old_start.
        size_t anchor = h.old_len == 0 ? h.old_start : h.old_start - 1; // 0-based, file coords
        if (anchor < line_offset)
            throw HunkAnchorMismatch(file_path, hi, h.old_start);
        size_t start = anchor - line_offset;
        if (start < cursor || start > pre.size())
            throw HunkAnchorMismatch(file_path, hi, h.old_start);
        while (cursor < start)
            out.push_back(pre[cursor++]);
        for (const auto& hl : h.lines) {
            switch (hl.marker) {
            case LineMarker::Context:
                if (cursor >= pre.size() || pre[cursor] != hl.text)
                    throw HunkAnchorMismatch(file_path, hi, line_offset + cursor + 1);
                out.push_back(pre[cursor++]);
                break;
            case LineMarker::Removed:
                if (cursor >= pre.size() || pre[cursor] != hl.text)
                    throw HunkAnchorMismatch(file_path, hi, line_offset + cursor + 1);
                ++cursor;
                break;
            case LineMarker::Added:
                out.push_back(hl.text);
                break;
            }
        }
    }
    while (cursor < pre.size())
        out.push_back(pre[cursor++]);

    std::string result = join_lines(out);
    if (trailing_newline && !result.empty())
        result += '\n';
    return result;
}

// Un-applies hunks: post-image back to pre-image.
inline std::string reverse_apply_hunks(const std::string& post_text, const std::vector<Hunk>& hunks,
                                       const std::string& file_path = "", size_t line_offset = 0) {
    std::vector<Hunk> inverted;
    inverted.reserve(hunks.size());
    for (const auto& h : hunks) {
        Hunk inv;
        inv.old_start = h.new_start;
        inv.old_len = h.new_len;
        inv.new_start = h.old_start;
        inv.new_len = h.old_len;
        for (const auto& hl : h.lines) {
            LineMarker m = hl.marker == LineMarker::Removed  ? LineMarker::Added
                           : hl.marker == LineMarker::Added ? LineMarker::Removed
                                                            : LineMarker::Context;
            inv.lines.push_back({m, hl.text});
        }
        inverted.push_back(std::move(inv));
    }
    return apply_hunks(post_text, inverted, file_path, line_offset);
}

} // namespace halu::corpus
