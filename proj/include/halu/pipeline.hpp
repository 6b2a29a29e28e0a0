#pragma once

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "halu/cwe.hpp"
#include "halu/diff.hpp"
#include "halu/embedding.hpp"
#include "halu/errors.hpp"
#include "halu/extract.hpp"
#include "halu/fetch.hpp"
#include "halu/finetune.hpp"
#include "halu/gateway.hpp"
#include "halu/manifest.hpp"
#include "halu/metrics.hpp"
#include "halu/prompt.hpp"
#include "halu/sample.hpp"
#include "halu/select.hpp"

namespace halu::pipeline {

inline constexpr const char* kPipelineVersion = "1";

struct ConfigError : Error {
    std::string field;
    ConfigError(const std::string& f, const std::string& detail)
        : Error("config field '" + f + "': " + detail), field(f) {}
};

struct MissingStageInput : Error {
    std::string stage;
    MissingStageInput(const std::string& s, const std::string& artifact)
        : Error("stage '" + s + "' needs missing artifact: " + artifact), stage(s) {}
};

struct RunConfig {
    std::filesystem::path manifest_path = "data/manifest.csv";
    std::filesystem::path corpus_dir = "corpus";
    std::filesystem::path run_dir = "run";
    std::filesystem::path templates_dir = "templates";
    std::vector<gateway::BackendSpec> backends;
    std::optional<gateway::BackendSpec> classifier;
    prompt::PromptKind prompt_kind = prompt::PromptKind::CoStar;
    double p = 0.8;
    int k_rounds = 5;
    int64_t base_seed = 0;
    size_t max_in_flight = 4;
    bool mock_mode = false;
    int export_round = 0;
    bool pair_lock = false;
};

namespace detail {

inline gateway::BackendSpec backend_from_json(const nlohmann::json& j) {
    gateway::BackendSpec spec;
    spec.name = j.at("name").get<std::string>();
    spec.endpoint = j.value("endpoint", std::string());
    spec.model_id = j.value("model_id", spec.name);
    spec.api_key_env = j.value("api_key_env", std::string());
    spec.temperature = j.value("temperature", 0.0);
    spec.max_output_tokens = j.value("max_output_tokens", 1024);
    spec.timeout_s = j.value("timeout_s", 60.0);
    if (spec.timeout_s <= 0.0)
        throw ConfigError("timeout_s", "must be > 0");
    if (spec.temperature < 0.0)
        throw ConfigError("temperature", "must be >= 0");
    return spec;
}

} // namespace detail

// Loads a config document; unknown fields are rejected so typos fail loud.
// HALU_RUN_DIR, when set, overrides the run directory.
inline RunConfig load_config(const std::filesystem::path& path) {
    RunConfig cfg;
    auto j = nlohmann::json::parse(read_file(path));
    static const std::set<std::string> known = {
        "manifest", "corpus_dir", "run_dir",    "templates_dir", "backends", "classifier",
        "prompt",   "p",          "rounds",     "seed",          "max_in_flight",
        "mock",     "export_round", "pair_lock"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError(it.key(), "unknown field");

    cfg.manifest_path = j.value("manifest", cfg.manifest_path.string());
    cfg.corpus_dir = j.value("corpus_dir", cfg.corpus_dir.string());
    cfg.run_dir = j.value("run_dir", cfg.run_dir.string());
    cfg.templates_dir = j.value("templates_dir", cfg.templates_dir.string());
    if (j.contains("prompt"))
        cfg.prompt_kind = prompt::prompt_kind_from_string(j.at("prompt").get<std::string>());
    cfg.p = j.value("p", cfg.p);
    cfg.k_rounds = j.value("rounds", cfg.k_rounds);
    cfg.base_seed = j.value("seed", cfg.base_seed);
    cfg.max_in_flight = j.value("max_in_flight", cfg.max_in_flight);
    cfg.mock_mode = j.value("mock", cfg.mock_mode);
    cfg.export_round = j.value("export_round", cfg.export_round);
    cfg.pair_lock = j.value("pair_lock", cfg.pair_lock);
    if (j.contains("backends"))
        for (const auto& b : j.at("backends"))
            cfg.backends.push_back(detail::backend_from_json(b));
    if (j.contains("classifier"))
        cfg.classifier = detail::backend_from_json(j.at("classifier"));

    if (!(cfg.p > 0.0) || cfg.p > 1.0)
        throw ConfigError("p", "must be in (0, 1]");
    if (cfg.k_rounds < 1)
        throw ConfigError("rounds", "must be >= 1");
    if (const char* run_env = std::getenv("HALU_RUN_DIR"); run_env && *run_env)
        cfg.run_dir = run_env;
    return cfg;
}

// The pluggable backends a run uses. Mock runs are fully offline and
// deterministic; the CLI builds a wire toolbox for real backends.
struct Toolbox {
    std::vector<std::shared_ptr<gateway::GeneratorBackend>> generators;
    std::shared_ptr<gateway::ClassifierBackend> classifier;
    std::shared_ptr<select::EmbeddingBackend> embedder;
    std::shared_ptr<corpus::PatchFetcher> fetcher;
    gateway::RetryPolicy retry;
};

inline Toolbox make_mock_toolbox(const RunConfig& cfg) {
    Toolbox box;
    box.generators.push_back(
        std::make_shared<gateway::MockGenerator>(static_cast<uint64_t>(cfg.base_seed)));
    box.classifier = std::make_shared<gateway::KeywordMockClassifier>();
    box.embedder = std::make_shared<select::MockEmbeddingBackend>(static_cast<uint64_t>(cfg.base_seed));
    box.fetcher = std::make_shared<corpus::OfflineFetcher>();
    box.retry = gateway::RetryPolicy::none();
    return box;
}

// --- artifact paths ---

struct Artifacts {
    std::filesystem::path samples;
    std::filesystem::path prompts;
    std::filesystem::path reports;
    std::filesystem::path embeddings;
    std::filesystem::path rounds;
    std::filesystem::path classifications;
    std::filesystem::path metrics_json;
    std::filesystem::path metrics_md;
    std::filesystem::path train_config;
    std::filesystem::path version_stamp;
};

inline Artifacts artifacts_for(const RunConfig& cfg) {
    Artifacts a;
    a.samples = cfg.corpus_dir / "samples.jsonl";
    a.prompts = cfg.run_dir / "prompts.jsonl";
    a.reports = cfg.run_dir / "reports.jsonl";
    a.embeddings = cfg.run_dir / "embeddings.jsonl";
    a.rounds = cfg.run_dir / "rounds.json";
    a.classifications = cfg.run_dir / "classifications.jsonl";
    a.metrics_json = cfg.run_dir / "metrics.json";
    a.metrics_md = cfg.run_dir / "metrics.md";
    a.train_config = cfg.run_dir / "train_config.json";
    a.version_stamp = cfg.run_dir / "pipeline.json";
    return a;
}

namespace detail {

inline void require_artifact(const std::string& stage, const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        throw MissingStageInput(stage, path.string());
}

inline gateway::GeneratorBackend& primary_generator(const Toolbox& box) {
    if (box.generators.empty())
        throw ConfigError("backends", "no generator backend configured");
    return *box.generators.front();
}

inline gateway::ClassifierBackend& classifier_backend(const Toolbox& box) {
    if (!box.classifier)
        throw ConfigError("classifier", "no classifier backend configured");
    return *box.classifier;
}

// Stages refuse to mix artifacts produced by a different layout version.
inline void stamp_version(const RunConfig& cfg) {
    auto path = artifacts_for(cfg).version_stamp;
    if (std::filesystem::exists(path)) {
        auto j = nlohmann::json::parse(read_file(path));
        if (j.value("pipeline_version", std::string()) != kPipelineVersion)
            throw ConfigError("run_dir", "pipeline_version mismatch in " + path.string());
        return;
    }
    write_file(path, nlohmann::json{{"pipeline_version", kPipelineVersion}}.dump(2) + "\n");
}

struct PromptRow {
    std::string sample_id;
    prompt::Phase phase = prompt::Phase::Training;
    prompt::RenderedPrompt rendered;
};

inline void save_prompts(const std::filesystem::path& path, const std::vector<PromptRow>& rows) {
    std::string out;
    for (const auto& row : rows) {
        nlohmann::json j{{"sample_id", row.sample_id},
                         {"phase", to_string(row.phase)},
                         {"prompt_kind", to_string(row.rendered.kind)},
                         {"context_source", to_string(row.rendered.context_source)},
                         {"text", row.rendered.text},
                         {"attached_code", row.rendered.attached_code}};
        out += j.dump();
        out += '\n';
    }
    write_file(path, out);
}

inline std::vector<PromptRow> load_prompts(const std::filesystem::path& path) {
    std::vector<PromptRow> rows;
    for (const auto& line : split_lines(read_file(path))) {
        if (trim(line).empty())
            continue;
        auto j = nlohmann::json::parse(line);
        PromptRow row;
        row.sample_id = j.at("sample_id").get<std::string>();
        row.phase = prompt::phase_from_string(j.at("phase").get<std::string>());
        row.rendered.kind = prompt::prompt_kind_from_string(j.at("prompt_kind").get<std::string>());
        row.rendered.context_source = j.at("context_source").get<std::string>() == "cve_description"
                                          ? prompt::ContextSource::CveDescription
                                          : prompt::ContextSource::GenericSuspicion;
        row.rendered.text = j.at("text").get<std::string>();
        row.rendered.attached_code = j.at("attached_code").get<std::string>();
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::map<std::string, std::string> load_pre_sources(const RunConfig& cfg,
                                                           const std::string& cve_id) {
    std::map<std::string, std::string> sources;
    auto dir = cfg.corpus_dir / "sources" / cve_id;
    if (!std::filesystem::exists(dir))
        return sources;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        auto rel = std::filesystem::relative(entry.path(), dir).generic_string();
        sources[rel] = read_file(entry.path());
    }
    return sources;
}

} // namespace detail

// --- stages ---

// Parse the manifest and warm the patch cache.
inline void stage_ingest(const RunConfig& cfg, const Toolbox& box) {
    detail::stamp_version(cfg);
    auto entries = corpus::load_manifest(cfg.manifest_path);
    for (const auto& e : entries)
        corpus::fetch_patch(e, *box.fetcher, cfg.corpus_dir);
    write_file(cfg.run_dir / "ingest.json",
               nlohmann::json{{"n_entries", entries.size()}}.dump(2) + "\n");
}

// Build the vulnerable/fixed pair per record and persist the sample store.
inline void stage_extract(const RunConfig& cfg, const Toolbox&) {
    detail::stamp_version(cfg);
    auto entries = corpus::load_manifest(cfg.manifest_path);
    std::vector<corpus::Sample> samples;
    std::vector<std::string> warnings;
    for (const auto& e : entries) {
        auto cache = corpus::patch_cache_path(cfg.corpus_dir, e.cve_id);
        detail::require_artifact("extract", cache);
        std::string raw = read_file(cache);
        auto patch = corpus::parse_unified_diff(raw);
        patch.cve_id = e.cve_id;
        std::string description = corpus::extract_description(raw);
        auto pair = corpus::build_samples(e, patch, detail::load_pre_sources(cfg, e.cve_id), description);
        samples.push_back(std::move(pair.vulnerable));
        samples.push_back(std::move(pair.fixed));
        warnings.insert(warnings.end(), pair.warnings.begin(), pair.warnings.end());
    }
    corpus::save_samples(artifacts_for(cfg).samples, samples);
    write_file(cfg.run_dir / "extract.json",
               nlohmann::json{{"n_samples", samples.size()}, {"warnings", warnings}}.dump(2) + "\n");
}

// Render both phase variants of the configured prompt family per sample.
inline void stage_prompt(const RunConfig& cfg, const Toolbox&) {
    detail::stamp_version(cfg);
    auto paths = artifacts_for(cfg);
    detail::require_artifact("prompt", paths.samples);
    auto samples = corpus::load_samples(paths.samples);
    prompt::PromptEngine engine(cfg.templates_dir);
    std::vector<detail::PromptRow> rows;
    for (const auto& sample : samples) {
        std::string code = corpus::sample_text(sample);
        for (prompt::Phase phase : {prompt::Phase::Training, prompt::Phase::Evaluation}) {
            auto [source, context] = prompt::select_context(sample, phase);
            detail::PromptRow row;
            row.sample_id = sample.sample_id;
            row.phase = phase;
            row.rendered = engine.render(cfg.prompt_kind, source, context, code);
            rows.push_back(std::move(row));
        }
    }
    detail::save_prompts(paths.prompts, rows);
}

// Generate reports for every (backend, sample, phase) not yet present;
// the reports file is append-only within a run directory.
inline void stage_generate(const RunConfig& cfg, const Toolbox& box) {
    detail::stamp_version(cfg);
    auto paths = artifacts_for(cfg);
    detail::require_artifact("generate", paths.prompts);
    detail::require_artifact("generate", paths.samples);
    auto prompts = detail::load_prompts(paths.prompts);
    auto samples = corpus::load_samples(paths.samples);
    std::map<std::string, const corpus::Sample*> by_id;
    for (const auto& s : samples)
        by_id[s.sample_id] = &s;

    std::set<std::string> existing;
    if (std::filesystem::exists(paths.reports))
        for (const auto& r : gateway::load_reports(paths.reports))
            existing.insert(r.report_id);

    if (box.generators.empty())
        throw ConfigError("backends", "no generator backend configured");
    for (const auto& generator : box.generators) {
        std::vector<gateway::GenJob> jobs;
        for (const auto& row : prompts) {
            auto it = by_id.find(row.sample_id);
            if (it == by_id.end())
                throw MissingStageInput("generate", "sample " + row.sample_id);
            std::string report_id = row.sample_id + "#" + generator->name() + "#" +
                                    to_string(row.rendered.kind) + "#" + to_string(row.phase);
            if (existing.count(report_id))
                continue;
            jobs.push_back({*it->second, row.rendered, row.phase});
        }
        auto batch = gateway::generate_all(*generator, jobs, cfg.max_in_flight, box.retry);
        if (!batch.failures.empty()) {
            std::string detail;
            for (const auto& f : batch.failures)
                detail += f.sample_id + " (" + f.error + "); ";
            throw Error("generate: " + std::to_string(batch.failures.size()) +
                        " item(s) failed after retries: " + detail);
        }
        gateway::append_reports(paths.reports, batch.reports);
    }
}

namespace detail {

// The canonical report whose text anchors a sample's embedding: the
// training-phase report from the first configured generator.
inline std::map<std::string, const gateway::Report*>
canonical_reports(const std::vector<gateway::Report>& reports, const std::string& backend_name,
                  prompt::PromptKind kind, prompt::Phase phase) {
    std::map<std::string, const gateway::Report*> out;
    for (const auto& r : reports)
        if (r.backend_name == backend_name && r.prompt_kind == kind && r.phase == phase)
            out[r.sample_id] = &r;
    return out;
}

} // namespace detail

// Embed report texts and produce the k seeded diverse splits.
inline void stage_select(const RunConfig& cfg, const Toolbox& box) {
    detail::stamp_version(cfg);
    auto paths = artifacts_for(cfg);
    detail::require_artifact("select", paths.samples);
    detail::require_artifact("select", paths.reports);
    auto samples = corpus::load_samples(paths.samples);
    auto reports = gateway::load_reports(paths.reports);
    const std::string backend_name = detail::primary_generator(box).name();
    auto canonical = detail::canonical_reports(reports, backend_name, cfg.prompt_kind,
                                               prompt::Phase::Training);

    std::vector<std::string> ids;
    std::map<std::string, select::EmbeddingVector> vectors;
    std::vector<select::EmbeddingVector> cache_order;
    for (const auto& s : samples) {
        auto it = canonical.find(s.sample_id);
        if (it == canonical.end())
            throw MissingStageInput("select", "report for " + s.sample_id);
        auto vec = box.embedder->embed(it->second->text, s.sample_id);
        ids.push_back(s.sample_id);
        cache_order.push_back(vec);
        vectors.emplace(s.sample_id, std::move(vec));
    }
    select::save_embeddings(paths.embeddings, cache_order);

    std::vector<select::SplitRound> rounds;
    if (cfg.pair_lock) {
        // Select over vulnerable representatives, then bring each pair mate
        // along on the same side.
        std::vector<std::string> reps;
        for (const auto& id : ids)
            if (id.size() >= 5 && id.substr(id.size() - 5) == ":vuln")
                reps.push_back(id);
        auto rep_rounds = select::make_rounds(reps, vectors, cfg.k_rounds, cfg.p, cfg.base_seed);
        for (auto& rr : rep_rounds) {
            select::SplitRound expanded;
            expanded.round_index = rr.round_index;
            expanded.seed = rr.seed;
            expanded.p = rr.p;
            auto expand = [](const std::string& rep) {
                return rep.substr(0, rep.size() - 5) + ":fixed";
            };
            for (const auto& rep : rr.selected_ids) {
                expanded.selected_ids.push_back(rep);
                expanded.selected_ids.push_back(expand(rep));
            }
            for (const auto& rep : rr.held_out_ids) {
                expanded.held_out_ids.push_back(rep);
                expanded.held_out_ids.push_back(expand(rep));
            }
            rounds.push_back(std::move(expanded));
        }
    } else {
        rounds = select::make_rounds(ids, vectors, cfg.k_rounds, cfg.p, cfg.base_seed);
    }
    select::save_rounds(paths.rounds, rounds);
}

// Write the fine-tuning dataset for the configured round, plus the
// training configuration the external trainer consumes.
inline void stage_export_train(const RunConfig& cfg, const Toolbox& box) {
    detail::stamp_version(cfg);
    auto paths = artifacts_for(cfg);
    detail::require_artifact("export-train", paths.rounds);
    detail::require_artifact("export-train", paths.reports);
    auto rounds = select::load_rounds(paths.rounds);
    if (cfg.export_round < 0 || static_cast<size_t>(cfg.export_round) >= rounds.size())
        throw ConfigError("export_round", "round index out of range");
    auto reports = gateway::load_reports(paths.reports);
    finetune::export_training_set(reports, rounds[static_cast<size_t>(cfg.export_round)],
                                  detail::primary_generator(box).name(), cfg.prompt_kind,
                                  finetune::default_export_paths(cfg.run_dir));
    write_file(paths.train_config, finetune::emit_train_config(nlohmann::json::object()));
}

// Classify every round's held-out evaluation reports.
inline void stage_classify(const RunConfig& cfg, const Toolbox& box) {
    detail::stamp_version(cfg);
    auto paths = artifacts_for(cfg);
    detail::require_artifact("classify", paths.rounds);
    detail::require_artifact("classify", paths.reports);
    auto rounds = select::load_rounds(paths.rounds);
    auto reports = gateway::load_reports(paths.reports);
    const std::string backend_name = detail::primary_generator(box).name();
    auto canonical = detail::canonical_reports(reports, backend_name, cfg.prompt_kind,
                                               prompt::Phase::Evaluation);

    std::string out;
    for (const auto& round : rounds) {
        std::vector<gateway::Report> to_classify;
        for (const auto& id : round.held_out_ids) {
            auto it = canonical.find(id);
            if (it == canonical.end())
                throw MissingStageInput("classify", "evaluation report for " + id);
            to_classify.push_back(*it->second);
        }
        auto outcome = gateway::classify_all(detail::classifier_backend(box), to_classify,
                                             cfg.max_in_flight, box.retry);
        if (!outcome.failures.empty())
            throw Error("classify: " + std::to_string(outcome.failures.size()) + " item(s) failed");
        for (const auto& c : outcome.classifications) {
            nlohmann::json j{{"round_index", round.round_index},
                             {"sample_id", c.sample_id},
                             {"predicted", to_string(c.predicted)},
                             {"backend_name", c.backend_name}};
            out += j.dump();
            out += '\n';
        }
    }
    write_file(paths.classifications, out);
}

// Score all rounds, aggregate per the 5-round protocol, and break results
// down by CWE category and unseen status.
inline void stage_evaluate(const RunConfig& cfg, const Toolbox& box) {
    detail::stamp_version(cfg);
    auto paths = artifacts_for(cfg);
    detail::require_artifact("evaluate", paths.classifications);
    detail::require_artifact("evaluate", paths.samples);
    auto samples = corpus::load_samples(paths.samples);
    auto entries = corpus::load_manifest(cfg.manifest_path);

    std::map<std::string, gateway::Label> truth;
    std::map<std::string, std::string> cwe_map;
    for (const auto& s : samples) {
        truth[s.sample_id] = s.kind == corpus::SampleKind::Vulnerable ? gateway::Label::Positive
                                                                      : gateway::Label::Negative;
        cwe_map[s.sample_id] = s.cwe_id;
    }
    auto partition = select::partition_unseen_cwe(entries);

    std::map<int, std::vector<gateway::Classification>> by_round;
    for (const auto& line : split_lines(read_file(paths.classifications))) {
        if (trim(line).empty())
            continue;
        auto j = nlohmann::json::parse(line);
        gateway::Classification c;
        c.sample_id = j.at("sample_id").get<std::string>();
        c.predicted = gateway::label_from_string(j.at("predicted").get<std::string>());
        c.backend_name = j.at("backend_name").get<std::string>();
        by_round[j.at("round_index").get<int>()].push_back(std::move(c));
    }

    std::vector<metrics::MetricsBundle> bundles;
    nlohmann::json rounds_json = nlohmann::json::array();
    for (const auto& [round_index, classifications] : by_round) {
        auto cm = metrics::confusion(classifications, truth);
        auto bundle = metrics::compute_metrics(cm);
        auto tables = metrics::breakdown(classifications, truth, cwe_map, partition);
        rounds_json.push_back({{"round_index", round_index},
                               {"confusion", {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}}},
                               {"metrics", metrics::bundle_to_json(bundle)},
                               {"breakdown", metrics::breakdown_to_json(tables)}});
        bundles.push_back(std::move(bundle));
    }
    if (bundles.empty())
        throw MissingStageInput("evaluate", "no classifications found");
    auto aggregate = metrics::aggregate_rounds(bundles);

    const std::string model = detail::primary_generator(box).name();
    nlohmann::json doc{{"pipeline_version", kPipelineVersion},
                       {"model", model},
                       {"prompt", to_string(cfg.prompt_kind)},
                       {"rounds", rounds_json},
                       {"aggregate", metrics::aggregates_to_json(aggregate)}};
    write_file(paths.metrics_json, doc.dump(2) + "\n");
    write_file(paths.metrics_md, metrics::metrics_markdown(model, to_string(cfg.prompt_kind), aggregate));
}

// Corpus census; function/LOC totals need the sample store.
inline corpus::DatasetStats run_census(const RunConfig& cfg, std::ostream& out) {
    auto entries = corpus::load_manifest(cfg.manifest_path);
    std::vector<corpus::Sample> samples;
    auto samples_path = artifacts_for(cfg).samples;
    bool have_samples = std::filesystem::exists(samples_path);
    if (have_samples)
        samples = corpus::load_samples(samples_path);
    auto stats = corpus::census(samples, entries);
    out << "records: " << stats.n_records << "\n";
    out << "samples: " << (have_samples ? samples.size() : entries.size() * 2) << "\n";
    out << "cwes: " << stats.n_cwes << "\n";
    out << "programs: " << stats.n_programs << "\n";
    if (have_samples) {
        out << "functions: " << stats.n_functions << "\n";
        out << "loc: " << stats.n_loc << "\n";
    } else {
        out << "functions: skipped (sample store not built)\n";
        out << "loc: skipped (sample store not built)\n";
    }
    for (const auto& [cwe, n] : stats.per_cwe_counts)
        out << "  " << cwe << ": " << n << "\n";
    return stats;
}

inline int run(const std::string& command, const RunConfig& cfg, const Toolbox& box,
               std::ostream& out) {
    if (command == "ingest")
        stage_ingest(cfg, box);
    else if (command == "extract")
        stage_extract(cfg, box);
    else if (command == "prompt")
        stage_prompt(cfg, box);
    else if (command == "generate")
        stage_generate(cfg, box);
    else if (command == "select")
        stage_select(cfg, box);
    else if (command == "export-train")
        stage_export_train(cfg, box);
    else if (command == "classify")
        stage_classify(cfg, box);
    else if (command == "evaluate")
        stage_evaluate(cfg, box);
    else if (command == "census")
        run_census(cfg, out);
    else if (command == "all") {
        stage_ingest(cfg, box);
        stage_extract(cfg, box);
        stage_prompt(cfg, box);
        stage_generate(cfg, box);
        stage_select(cfg, box);
        stage_export_train(cfg, box);
        stage_classify(cfg, box);
        stage_evaluate(cfg, box);
    } else {
        throw Error("unknown command: " + command);
    }
    return 0;
}

} // namespace halu::pipeline
