#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "halu/errors.hpp"
#include "halu/util.hpp"

namespace halu::corpus {

// One extracted function, including attributes and doc comments
// contiguously above the signature. Lines are 1-based, inclusive.
struct FunctionSpan {
    std::string file_path;
    std::string name;
    size_t start_line = 0;
    size_t end_line = 0;
    std::string text;

    size_t line_count() const { return end_line - start_line + 1; }
};

struct UnbalancedBraces : Error {
    std::string file_path;
    size_t line;
    UnbalancedBraces(const std::string& f, size_t l)
        : Error("unbalanced braces in '" + f + "' starting at line " + std::to_string(l)),
          file_path(f), line(l) {}
};

namespace detail {

enum class ByteClass : unsigned char { Code, Comment, Literal };

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Classifies every byte as code, comment, or string/char literal so the
// scanner never matches keywords or braces inside them. Handles nested
// block comments, raw strings r#"..."#, byte strings, and the char-literal
// versus lifetime ambiguity around a single quote.
inline std::vector<ByteClass> classify_bytes(const std::string& src) {
    std::vector<ByteClass> cls(src.size(), ByteClass::Code);
    size_t i = 0;
    const size_t n = src.size();
    while (i < n) {
        char c = src[i];
        // line comment (covers /// doc comments)
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n')
                cls[i++] = ByteClass::Comment;
            continue;
        }
        // block comment, nested per Rust
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            size_t depth = 0;
            while (i < n) {
                if (src[i] == '/' && i + 1 < n && src[i + 1] == '*') {
                    cls[i] = cls[i + 1] = ByteClass::Comment;
                    i += 2;
                    ++depth;
                } else if (src[i] == '*' && i + 1 < n && src[i + 1] == '/') {
                    cls[i] = cls[i + 1] = ByteClass::Comment;
                    i += 2;
                    if (--depth == 0)
                        break;
                } else {
                    cls[i++] = ByteClass::Comment;
                }
            }
            continue;
        }
        // raw (byte) string: r"...", r#"..."#, br#"..."#
        if ((c == 'r' || c == 'b') && (i == 0 || !is_ident_char(src[i - 1]))) {
            size_t j = i;
            if (src[j] == 'b' && j + 1 < n && src[j + 1] == 'r')
                ++j;
            if (src[j] == 'r') {
                size_t k = j + 1;
                size_t hashes = 0;
                while (k < n && src[k] == '#') {
                    ++hashes;
                    ++k;
                }
                if (k < n && src[k] == '"') {
                    ++k;
                    while (k < n) {
                        if (src[k] == '"') {
                            size_t h = 0;
                            while (h < hashes && k + 1 + h < n && src[k + 1 + h] == '#')
                                ++h;
                            if (h == hashes) {
                                k += 1 + hashes;
                                break;
                            }
                        }
                        ++k;
                    }
                    for (size_t p = i; p < k && p < n; ++p)
                        cls[p] = ByteClass::Literal;
                    i = k;
                    continue;
                }
            }
        }
        // plain or byte string
        if (c == '"' || (c == 'b' && i + 1 < n && src[i + 1] == '"' && (i == 0 || !is_ident_char(src[i - 1])))) {
            size_t j = (c == 'b') ? i + 1 : i;
            cls[i] = ByteClass::Literal;
            if (c == 'b')
                cls[j] = ByteClass::Literal;
            ++j;
            while (j < n) {
                cls[j] = ByteClass::Literal;
                if (src[j] == '\\' && j + 1 < n) {
                    cls[j + 1] = ByteClass::Literal;
                    j += 2;
                    continue;
                }
                if (src[j] == '"') {
                    ++j;
                    break;
                }
                ++j;
            }
            i = j;
            continue;
        }
        // char literal or lifetime
        if (c == '\'') {
            size_t j = i + 1;
            bool is_char = false;
            if (j < n && src[j] == '\\') {
                ++j;
                if (j < n && src[j] == 'u' && j + 1 < n && src[j + 1] == '{') {
                    j += 2;
                    while (j < n && src[j] != '}')
                        ++j;
                    ++j;
                } else {
                    ++j;
                }
                is_char = j < n && src[j] == '\'';
            } else if (j < n && j + 1 < n && src[j + 1] == '\'' && src[j] != '\'') {
                j += 1;
                is_char = true;
            }
            if (is_char) {
                for (size_t p = i; p <= j && p < n; ++p)
                    cls[p] = ByteClass::Literal;
                i = j + 1;
                continue;
            }
            // lifetime: leave the quote as code and move on
            ++i;
            continue;
        }
        ++i;
    }
    return cls;
}

struct LineIndex {
    std::vector<size_t> line_of_byte;  // byte offset -> 1-based line
    std::vector<size_t> line_begin;    // 1-based line -> byte offset
};

inline LineIndex index_lines(const std::string& src) {
    LineIndex idx;
    idx.line_of_byte.resize(src.size());
    idx.line_begin.push_back(0); // line 0 unused
    idx.line_begin.push_back(0);
    size_t line = 1;
    for (size_t i = 0; i < src.size(); ++i) {
        idx.line_of_byte[i] = line;
        if (src[i] == '\n') {
            ++line;
            idx.line_begin.push_back(i + 1);
        }
    }
    return idx;
}

} // namespace detail

// Extracts all function items from Rust source. Signature scan for the
// `fn` keyword followed by brace matching that ignores strings, chars,
// raw strings, and comments. Nested functions stay inside their parent
// span. Works on fragments; no full grammar parse.
inline std::vector<FunctionSpan> extract_functions(const std::string& source, const std::string& file_path) {
    std::vector<FunctionSpan> spans;
    if (source.empty())
        return spans;

    const auto cls = detail::classify_bytes(source);
    const auto lines = split_lines(source);
    const auto idx = detail::index_lines(source);

    // Decoration lines (doc comments and attributes) directly above a
    // signature belong to its span. Attributes may span lines.
    std::vector<bool> decoration(lines.size() + 2, false);
    {
        long attr_depth = 0;
        for (size_t ln = 1; ln <= lines.size(); ++ln) {
            auto t = trim(lines[ln - 1]);
            bool dec = false;
            if (attr_depth > 0) {
                dec = true;
            } else if (t.rfind("///", 0) == 0 || t.rfind("#[", 0) == 0 || t.rfind("#![", 0) == 0) {
                dec = true;
            }
            if (dec) {
                size_t begin = idx.line_begin[ln];
                size_t end = (ln < lines.size()) ? idx.line_begin[ln + 1] : source.size();
                for (size_t p = begin; p < end; ++p) {
                    if (cls[p] != detail::ByteClass::Code)
                        continue;
                    if (source[p] == '[')
                        ++attr_depth;
                    else if (source[p] == ']')
                        --attr_depth;
                }
                if (attr_depth < 0)
                    attr_depth = 0;
            }
            decoration[ln] = dec;
        }
    }

    const size_t n = source.size();
    size_t i = 0;
    while (i + 1 < n) {
        if (cls[i] != detail::ByteClass::Code || source[i] != 'f' || source[i + 1] != 'n' ||
            (i > 0 && detail::is_ident_char(source[i - 1])) ||
            (i + 2 < n && detail::is_ident_char(source[i + 2]))) {
            ++i;
            continue;
        }
        size_t fn_pos = i;
        size_t j = i + 2;
        while (j < n && std::isspace(static_cast<unsigned char>(source[j])))
            ++j;
        if (j >= n || !(std::isalpha(static_cast<unsigned char>(source[j])) || source[j] == '_')) {
            ++i; // `fn(` pointer type, not an item
            continue;
        }
        size_t name_begin = j;
        while (j < n && detail::is_ident_char(source[j]))
            ++j;
        std::string name = source.substr(name_begin, j - name_begin);

        // find the body's opening brace; a `;` first means a bodyless
        // declaration (trait method, extern block)
        size_t body_open = std::string::npos;
        long paren = 0;
        long bracket = 0;
        for (size_t k = j; k < n; ++k) {
            if (cls[k] != detail::ByteClass::Code)
                continue;
            char c = source[k];
            if (c == '(')
                ++paren;
            else if (c == ')')
                --paren;
            else if (c == '[')
                ++bracket;
            else if (c == ']')
                --bracket;
            else if (c == ';' && paren == 0 && bracket == 0)
                break;
            else if (c == '{' && paren == 0 && bracket == 0) {
                body_open = k;
                break;
            }
        }
        if (body_open == std::string::npos) {
            i = j;
            continue;
        }

        long depth = 0;
        size_t body_close = std::string::npos;
        for (size_t k = body_open; k < n; ++k) {
            if (cls[k] != detail::ByteClass::Code)
                continue;
            if (source[k] == '{')
                ++depth;
            else if (source[k] == '}') {
                if (--depth == 0) {
                    body_close = k;
                    break;
                }
            }
        }
        if (body_close == std::string::npos)
            throw UnbalancedBraces(file_path, idx.line_of_byte[fn_pos]);

        size_t start_line = idx.line_of_byte[fn_pos];
        while (start_line > 1 && decoration[start_line - 1])
            --start_line;
        size_t end_line = idx.line_of_byte[body_close];

        FunctionSpan span;
        span.file_path = file_path;
        span.name = std::move(name);
        span.start_line = start_line;
        span.end_line = end_line;
        std::vector<std::string> body(lines.begin() + static_cast<long>(start_line) - 1,
                                      lines.begin() + static_cast<long>(end_line));
        span.text = join_lines(body);
        spans.push_back(std::move(span));

        i = body_close + 1; // nested fns stay inside the parent span
    }
    return spans;
}

} // namespace halu::corpus
