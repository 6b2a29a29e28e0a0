// halu-forge: batch pipeline turning CVE patch records into labeled
// vulnerability-report datasets and scored classification runs.

#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "halu/http.hpp"
#include "halu/pipeline.hpp"

using namespace halu;

namespace {

pipeline::Toolbox make_wire_toolbox(const pipeline::RunConfig& cfg) {
    pipeline::Toolbox box;
    for (const auto& spec : cfg.backends)
        box.generators.push_back(std::make_shared<gateway::HttpChatBackend>(spec));
    if (cfg.classifier)
        box.classifier = std::make_shared<gateway::HttpChatBackend>(*cfg.classifier);
    // report embeddings stay local and deterministic; the encoder model is
    // pluggable behind EmbeddingBackend
    box.embedder = std::make_shared<select::MockEmbeddingBackend>(static_cast<uint64_t>(cfg.base_seed));
    box.fetcher = std::make_shared<corpus::HttpPatchFetcher>();
    box.retry = gateway::RetryPolicy{};
    return box;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"halu-forge: CVE patch mining, report generation, diverse splits, "
                 "fine-tuning exports, and evaluation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string prompt_name;
    std::string manifest, corpus_dir, run_dir, templates_dir;
    int64_t seed = -1;
    int rounds = -1;
    double p = -1.0;
    int export_round = -1;
    int max_in_flight = -1;
    bool mock = false;
    bool pair_lock = false;

    app.add_option("--config", config_path, "run configuration file (JSON)");
    app.add_flag("--mock", mock, "offline deterministic backends");
    app.add_option("--seed", seed, "base seed for splits and mocks");
    app.add_option("--prompt", prompt_name, "prompt family: to|ro|costar")
        ->check(CLI::IsMember({"to", "ro", "costar"}));
    app.add_option("--rounds", rounds, "number of selection rounds");
    app.add_option("--p", p, "selection fraction in (0,1]");
    app.add_option("--manifest", manifest, "CVE manifest path");
    app.add_option("--corpus", corpus_dir, "corpus directory (patch cache, samples)");
    app.add_option("--run", run_dir, "run directory (stage artifacts)");
    app.add_option("--templates", templates_dir, "prompt template directory");
    app.add_option("--export-round", export_round, "round index exported to train/eval files");
    app.add_option("--max-in-flight", max_in_flight, "max concurrent backend requests");
    app.add_flag("--pair-lock", pair_lock, "keep vulnerable/fixed pairs on the same split side");

    for (const char* name : {"ingest", "extract", "prompt", "generate", "select", "export-train",
                             "classify", "evaluate", "census", "all"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        pipeline::RunConfig cfg;
        if (!config_path.empty())
            cfg = pipeline::load_config(config_path);
        // flags override file values
        if (mock)
            cfg.mock_mode = true;
        if (seed >= 0)
            cfg.base_seed = seed;
        if (!prompt_name.empty())
            cfg.prompt_kind = prompt::prompt_kind_from_string(prompt_name);
        if (rounds > 0)
            cfg.k_rounds = rounds;
        if (p > 0.0)
            cfg.p = p;
        if (!manifest.empty())
            cfg.manifest_path = manifest;
        if (!corpus_dir.empty())
            cfg.corpus_dir = corpus_dir;
        if (!run_dir.empty())
            cfg.run_dir = run_dir;
        if (!templates_dir.empty())
            cfg.templates_dir = templates_dir;
        if (export_round >= 0)
            cfg.export_round = export_round;
        if (max_in_flight > 0)
            cfg.max_in_flight = static_cast<size_t>(max_in_flight);
        if (pair_lock)
            cfg.pair_lock = true;
        if (const char* env = std::getenv("HALU_RUN_DIR"); env && *env)
            cfg.run_dir = env;

        auto box = (cfg.mock_mode || command == "census") ? pipeline::make_mock_toolbox(cfg)
                                                          : make_wire_toolbox(cfg);
        return pipeline::run(command, cfg, box, std::cout);
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "unexpected error: " << ex.what() << "\n";
        return 2;
    }
}
