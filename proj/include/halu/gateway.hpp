#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "halu/errors.hpp"
#include "halu/prompt.hpp"
#include "halu/sample.hpp"
#include "halu/util.hpp"

namespace halu::gateway {

struct BackendSpec {
    std::string name;
    std::string endpoint;
    std::string model_id;
    std::string api_key_env;
    double temperature = 0.0;
    int max_output_tokens = 1024;
    double timeout_s = 60.0;
};

enum class Label { Positive, Negative };

inline const char* to_string(Label l) { return l == Label::Positive ? "positive" : "negative"; }

inline Label label_from_string(const std::string& s) {
    if (s == "positive")
        return Label::Positive;
    if (s == "negative")
        return Label::Negative;
    throw Error("unknown label: " + s);
}

// One generated analysis bound to its sample. The label comes from the
// sample's kind, never from the completion text.
struct Report {
    std::string report_id;
    std::string sample_id;
    std::string backend_name;
    prompt::PromptKind prompt_kind = prompt::PromptKind::CoStar;
    prompt::Phase phase = prompt::Phase::Training;
    std::string text;
    size_t word_count = 0;
    bool over_limit = false; // > 500 words; flagged, never truncated
    Label label = Label::Negative;
};

struct Classification {
    std::string sample_id;
    Label predicted = Label::Negative;
    std::optional<double> score;
    std::string backend_name;
};

struct EmptyCompletion : Error {
    std::string backend_name;
    explicit EmptyCompletion(const std::string& name)
        : Error("backend '" + name + "' returned an empty completion"), backend_name(name) {}
};

struct UnparseableVerdict : Error {
    std::string reply;
    explicit UnparseableVerdict(const std::string& text)
        : Error("classifier reply matches neither verdict: '" + text + "'"), reply(text) {}
};

class GeneratorBackend {
public:
    virtual ~GeneratorBackend() = default;
    virtual std::string generate(const prompt::RenderedPrompt& prompt) = 0;
    virtual std::string name() const = 0;
};

class ClassifierBackend {
public:
    virtual ~ClassifierBackend() = default;
    // Raw reply; the first line must carry exactly one of POSITIVE/NEGATIVE.
    virtual std::string classify(const std::string& report_text) = 0;
    virtual std::string name() const = 0;
};

struct RetryPolicy {
    int max_attempts = 3;
    int base_delay_ms = 1000;
    double multiplier = 2.0;
    double jitter = 0.2; // +/- fraction of the delay

    static RetryPolicy none() { return {1, 0, 1.0, 0.0}; }
    static RetryPolicy immediate(int attempts) { return {attempts, 0, 1.0, 0.0}; }
};

inline constexpr size_t kReportWordLimit = 500;

// Instruction sent to wire classifiers ahead of the report text. Pinned so
// the verdict grammar below always applies.
inline constexpr const char* kClassifierInstruction =
    "Decide whether the following Rust vulnerability analysis report describes a real "
    "vulnerability or hallucinates one. Reply on the first line with exactly one word: "
    "POSITIVE if the report describes a real vulnerability, NEGATIVE otherwise.\n\n"
    "--- REPORT ---\n";

// --- deterministic mocks ---

// Pure function of (prompt text, seed). Emits a plausible-looking analysis
// whose wording, length, and verdict marker all derive from the hash.
class MockGenerator : public GeneratorBackend {
public:
    explicit MockGenerator(uint64_t seed = 0) : seed_(seed) {}

    static constexpr const char* kVulnMarker = "REAL-VULN";

    std::string generate(const prompt::RenderedPrompt& prompt) override {
        static const char* kWords[] = {
            "buffer",  "capacity", "pointer",   "allocation", "unsafe",    "overflow",
            "index",   "bounds",   "lifetime",  "borrow",     "race",      "guard",
            "length",  "offset",   "slice",     "validation", "truncation", "arithmetic",
            "checked", "wrapping", "invariant", "alias",      "drop",      "deallocation"};
        std::mt19937_64 rng(fnv1a64(prompt.text) ^ seed_);
        bool flag_vuln = (rng() & 1) != 0;
        size_t n_words = 120 + static_cast<size_t>(rng() % 120);

        std::string out = "----Finding:\nThe analysis of the provided Rust code suggests ";
        out += flag_vuln ? "a concrete memory-safety defect. " : "a potential weakness. ";
        if (flag_vuln) {
            out += std::string(kVulnMarker) + " ";
        }
        for (size_t i = 0; i < n_words; ++i) {
            out += kWords[rng() % (sizeof(kWords) / sizeof(kWords[0]))];
            out += (i + 1 < n_words) ? ' ' : '.';
        }
        return out;
    }

    std::string name() const override { return "mock-gen"; }

private:
    uint64_t seed_;
};

// Verdict by marker presence; stands in for the fine-tuned classifier.
class KeywordMockClassifier : public ClassifierBackend {
public:
    explicit KeywordMockClassifier(std::string marker = MockGenerator::kVulnMarker)
        : marker_(std::move(marker)) {}

    std::string classify(const std::string& report_text) override {
        return report_text.find(marker_) != std::string::npos ? "POSITIVE" : "NEGATIVE";
    }

    std::string name() const override { return "mock-classify"; }

private:
    std::string marker_;
};

// --- operations ---

inline Report make_report(const std::string& completion, const corpus::Sample& sample,
                          const prompt::RenderedPrompt& rendered, prompt::Phase phase,
                          const std::string& backend_name) {
    Report r;
    r.sample_id = sample.sample_id;
    r.backend_name = backend_name;
    r.prompt_kind = rendered.kind;
    r.phase = phase;
    r.report_id = sample.sample_id + "#" + backend_name + "#" + to_string(rendered.kind) + "#" +
                  to_string(phase);
    r.text = completion;
    r.word_count = word_count(completion);
    r.over_limit = r.word_count > kReportWordLimit;
    r.label = sample.kind == corpus::SampleKind::Vulnerable ? Label::Positive : Label::Negative;
    return r;
}

inline Report generate_report(GeneratorBackend& backend, const prompt::RenderedPrompt& rendered,
                              const corpus::Sample& sample,
                              prompt::Phase phase = prompt::Phase::Training) {
    std::string completion = backend.generate(rendered);
    if (completion.empty())
        throw EmptyCompletion(backend.name());
    return make_report(completion, sample, rendered, phase, backend.name());
}

struct GenJob {
    corpus::Sample sample;
    prompt::RenderedPrompt rendered;
    prompt::Phase phase = prompt::Phase::Training;
};

struct ItemFailure {
    size_t index = 0;
    std::string sample_id;
    std::string error;
    int attempts = 0;
};

// Successes stay in input order; failures are recorded, never dropped.
struct BatchResult {
    std::vector<Report> reports;
    std::vector<ItemFailure> failures;
};

namespace detail {

inline int backoff_delay_ms(const RetryPolicy& policy, int attempt, std::mt19937_64& rng) {
    double delay = policy.base_delay_ms;
    for (int i = 1; i < attempt; ++i)
        delay *= policy.multiplier;
    if (policy.jitter > 0.0) {
        double lo = 1.0 - policy.jitter, hi = 1.0 + policy.jitter;
        delay *= lo + (hi - lo) * unit_double(rng());
    }
    return static_cast<int>(delay);
}

template <typename Job, typename Fn, typename Out>
void run_bounded(const std::vector<Job>& jobs, size_t max_in_flight, const RetryPolicy& policy,
                 Fn&& one, std::vector<std::optional<Out>>& results,
                 std::vector<ItemFailure>& failures, std::mutex& failures_mutex) {
    results.assign(jobs.size(), std::nullopt);
    std::atomic<size_t> next{0};
    size_t workers = std::min(std::max<size_t>(max_in_flight, 1), std::max<size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t idx = next.fetch_add(1);
                if (idx >= jobs.size())
                    return;
                std::mt19937_64 jitter_rng(0x9e3779b97f4a7c15ull ^ idx);
                int attempt = 0;
                for (;;) {
                    ++attempt;
                    try {
                        results[idx] = one(jobs[idx]);
                        break;
                    } catch (const std::exception& ex) {
                        if (attempt >= policy.max_attempts) {
                            std::lock_guard<std::mutex> lock(failures_mutex);
                            failures.push_back({idx, std::string(), ex.what(), attempt});
                            break;
                        }
                        int delay = backoff_delay_ms(policy, attempt, jitter_rng);
                        if (delay > 0)
                            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
                    }
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace detail

// Generates every job with up to max_in_flight concurrent requests.
// Output order equals input order regardless of completion order.
inline BatchResult generate_all(GeneratorBackend& backend, const std::vector<GenJob>& jobs,
                                size_t max_in_flight, const RetryPolicy& retry = {}) {
    BatchResult out;
    std::vector<std::optional<Report>> results;
    std::mutex failures_mutex;
    detail::run_bounded(jobs, max_in_flight, retry,
                        [&](const GenJob& job) {
                            return generate_report(backend, job.rendered, job.sample, job.phase);
                        },
                        results, out.failures, failures_mutex);
    for (auto& f : out.failures)
        f.sample_id = jobs[f.index].sample.sample_id;
    std::sort(out.failures.begin(), out.failures.end(),
              [](const ItemFailure& a, const ItemFailure& b) { return a.index < b.index; });
    for (auto& r : results)
        if (r.has_value())
            out.reports.push_back(std::move(*r));
    return out;
}

// First line of the reply must contain exactly one of the two verdict
// tokens, case-insensitive, as a whole word.
inline Label parse_verdict(const std::string& reply) {
    auto lines = split_lines(reply);
    std::string first_line = lines.empty() ? std::string() : lines[0];
    std::string lower;
    lower.reserve(first_line.size());
    for (char c : first_line)
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    auto count_token = [&](const std::string& token) {
        size_t count = 0;
        size_t pos = 0;
        while ((pos = lower.find(token, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || !corpus::detail::is_ident_char(lower[pos - 1]);
            size_t after = pos + token.size();
            bool right_ok = after >= lower.size() || !corpus::detail::is_ident_char(lower[after]);
            if (left_ok && right_ok)
                ++count;
            pos = after;
        }
        return count;
    };
    size_t pos_n = count_token("positive");
    size_t neg_n = count_token("negative");
    if (pos_n + neg_n != 1)
        throw UnparseableVerdict(first_line);
    return pos_n == 1 ? Label::Positive : Label::Negative;
}

inline Classification classify_report(ClassifierBackend& backend, const Report& report) {
    if (report.text.empty())
        throw Error("classify_report: empty report text for " + report.sample_id);
    std::string reply = backend.classify(report.text);
    Classification c;
    c.sample_id = report.sample_id;
    c.predicted = parse_verdict(reply);
    c.backend_name = backend.name();
    return c;
}

struct ClassifyOutcome {
    std::vector<Classification> classifications;
    std::vector<ItemFailure> failures;
};

inline ClassifyOutcome classify_all(ClassifierBackend& backend, const std::vector<Report>& reports,
                                    size_t max_in_flight, const RetryPolicy& retry = {}) {
    ClassifyOutcome out;
    std::vector<std::optional<Classification>> results;
    std::mutex failures_mutex;
    detail::run_bounded(reports, max_in_flight, retry,
                        [&](const Report& r) { return classify_report(backend, r); },
                        results, out.failures, failures_mutex);
    for (auto& f : out.failures)
        f.sample_id = reports[f.index].sample_id;
    for (auto& c : results)
        if (c.has_value())
            out.classifications.push_back(std::move(*c));
    return out;
}

// --- reports file (JSON Lines, append-only per run) ---

inline nlohmann::json report_to_json(const Report& r) {
    return nlohmann::json{{"report_id", r.report_id},
                          {"sample_id", r.sample_id},
                          {"backend_name", r.backend_name},
                          {"prompt_kind", to_string(r.prompt_kind)},
                          {"phase", to_string(r.phase)},
                          {"text", r.text},
                          {"word_count", r.word_count},
                          {"over_limit", r.over_limit},
                          {"label", to_string(r.label)}};
}

inline Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.report_id = j.at("report_id").get<std::string>();
    r.sample_id = j.at("sample_id").get<std::string>();
    r.backend_name = j.at("backend_name").get<std::string>();
    r.prompt_kind = prompt::prompt_kind_from_string(j.at("prompt_kind").get<std::string>());
    r.phase = prompt::phase_from_string(j.at("phase").get<std::string>());
    r.text = j.at("text").get<std::string>();
    r.word_count = j.at("word_count").get<size_t>();
    r.over_limit = j.at("over_limit").get<bool>();
    r.label = label_from_string(j.at("label").get<std::string>());
    return r;
}

inline void append_reports(const std::filesystem::path& path, const std::vector<Report>& reports) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out)
        throw Error("cannot append to " + path.string());
    for (const auto& r : reports)
        out << report_to_json(r).dump() << '\n';
}

inline std::vector<Report> load_reports(const std::filesystem::path& path) {
    std::vector<Report> reports;
    for (const auto& line : split_lines(read_file(path))) {
        if (trim(line).empty())
            continue;
        reports.push_back(report_from_json(nlohmann::json::parse(line)));
    }
    return reports;
}

} // namespace halu::gateway
