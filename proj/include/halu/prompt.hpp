#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "halu/errors.hpp"
#include "halu/sample.hpp"
#include "halu/util.hpp"

namespace halu::prompt {

enum class PromptKind { TaskOriented, RoleOriented, CoStar };
enum class ContextSource { CveDescription, GenericSuspicion };
enum class Phase { Training, Evaluation };

inline const char* to_string(PromptKind k) {
    switch (k) {
    case PromptKind::TaskOriented: return "to";
    case PromptKind::RoleOriented: return "ro";
    case PromptKind::CoStar: return "costar";
    }
    return "?";
}

inline PromptKind prompt_kind_from_string(const std::string& s) {
    if (s == "to")
        return PromptKind::TaskOriented;
    if (s == "ro")
        return PromptKind::RoleOriented;
    if (s == "costar")
        return PromptKind::CoStar;
    throw Error("unknown prompt kind: " + s);
}

inline const char* to_string(ContextSource c) {
    return c == ContextSource::CveDescription ? "cve_description" : "generic_suspicion";
}

inline const char* to_string(Phase p) {
    return p == Phase::Training ? "training" : "evaluation";
}

inline Phase phase_from_string(const std::string& s) {
    if (s == "training")
        return Phase::Training;
    if (s == "evaluation")
        return Phase::Evaluation;
    throw Error("unknown phase: " + s);
}

// The fixed context used for fixed-kind training samples and for every
// evaluation sample, so evaluation prompts never leak the label.
inline constexpr const char* kGenericSuspicion =
    "The Rust code is suspected to have a vulnerability, but no specific project details or past issues are known.";

inline constexpr const char* kCodeSeparator = "--- CODE ---";
inline constexpr const char* kContextPlaceholder = "{{CONTEXT}}";

struct RenderedPrompt {
    PromptKind kind = PromptKind::CoStar;
    ContextSource context_source = ContextSource::GenericSuspicion;
    std::string text;          // instructions with context substituted, separator, code
    std::string attached_code; // the sample text appended after the instructions
};

struct MissingDescription : Error {
    std::string sample_id;
    explicit MissingDescription(const std::string& id)
        : Error("training context needs a CVE description for " + id), sample_id(id) {}
};

struct UnknownTemplate : Error {
    PromptKind kind;
    UnknownTemplate(PromptKind k, const std::string& path)
        : Error(std::string("missing template for '") + to_string(k) + "': " + path), kind(k) {}
};

// Training prompts for vulnerable samples carry the CVE description;
// everything else gets the generic suspicion sentence. Evaluation uses the
// generic sentence for both kinds.
inline std::pair<ContextSource, std::string> select_context(const corpus::Sample& sample, Phase phase) {
    if (phase == Phase::Training && sample.kind == corpus::SampleKind::Vulnerable) {
        if (trim(sample.description).empty())
            throw MissingDescription(sample.sample_id);
        return {ContextSource::CveDescription, sample.description};
    }
    return {ContextSource::GenericSuspicion, kGenericSuspicion};
}

class PromptEngine {
public:
    explicit PromptEngine(std::filesystem::path templates_dir)
        : templates_dir_(std::move(templates_dir)) {}

    RenderedPrompt render(PromptKind kind, ContextSource source, const std::string& context_text,
                          const std::string& code) const {
        if (context_text.empty())
            throw Error("render_prompt: empty context");
        const std::string& tpl = template_text(kind);
        size_t pos = tpl.find(kContextPlaceholder);
        if (pos == std::string::npos)
            throw Error("template for '" + std::string(to_string(kind)) + "' lacks " + kContextPlaceholder);

        RenderedPrompt out;
        out.kind = kind;
        out.context_source = source;
        out.attached_code = code;
        out.text = tpl.substr(0, pos) + context_text + tpl.substr(pos + std::string(kContextPlaceholder).size());
        if (out.text.empty() || out.text.back() != '\n')
            out.text += '\n';
        out.text += kCodeSeparator;
        out.text += '\n';
        out.text += code;
        return out;
    }

    // Raw template bytes, line endings normalized to '\n'.
    const std::string& template_text(PromptKind kind) const {
        auto it = cache_.find(kind);
        if (it != cache_.end())
            return it->second;
        auto path = templates_dir_ / (std::string(to_string(kind)) + ".txt");
        if (!std::filesystem::exists(path))
            throw UnknownTemplate(kind, path.string());
        std::string raw = read_file(path);
        std::string normalized;
        normalized.reserve(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '\r' && i + 1 < raw.size() && raw[i + 1] == '\n')
                continue;
            normalized += raw[i];
        }
        return cache_.emplace(kind, std::move(normalized)).first->second;
    }

private:
    std::filesystem::path templates_dir_;
    mutable std::map<PromptKind, std::string> cache_;
};

} // namespace halu::prompt
