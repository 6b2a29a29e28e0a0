#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "halu/gateway.hpp"
#include "halu/select.hpp"

namespace halu::finetune {

// One supervised example for the report classifier.
struct TrainRecord {
    std::string instruction;
    std::string input;  // report text
    std::string output; // "positive" | "negative"
};

// Instruction shared by every record, pinned so exports are reproducible.
inline constexpr const char* kClassifyInstruction =
    "Judge whether the following Rust vulnerability analysis report describes a real "
    "vulnerability or hallucinates one. Answer with exactly one word: positive if the "
    "report describes a real vulnerability, negative otherwise.";

struct MissingReport : Error {
    std::string sample_id;
    explicit MissingReport(const std::string& id)
        : Error("no report for selected sample '" + id + "'"), sample_id(id) {}
};

struct LabelMismatch : Error {
    std::string report_id;
    explicit LabelMismatch(const std::string& id)
        : Error("report label disagrees with its sample kind: " + id), report_id(id) {}
};

struct UnknownField : Error {
    std::string field;
    explicit UnknownField(const std::string& name)
        : Error("unknown train-config field: " + name), field(name) {}
};

// --- training configuration ---

struct TrainConfig {
    std::string base_model = "gemma-7b";
    std::string adapter = "lora";
    int lora_rank = 8;
    std::vector<std::string> lora_targets = {"q_proj", "v_proj"};
    std::string lr_schedule = "cosine";
    double lr_init = 1e-6;
    double weight_decay = 1e-4;
    int batch_size = 2;
    int grad_accum_steps = 2;
    std::string precision = "fp16";
    int epochs = 350;
};

inline nlohmann::json train_config_to_json(const TrainConfig& c) {
    return nlohmann::json{{"base_model", c.base_model},
                          {"adapter", c.adapter},
                          {"lora_rank", c.lora_rank},
                          {"lora_targets", c.lora_targets},
                          {"lr_schedule", c.lr_schedule},
                          {"lr_init", c.lr_init},
                          {"weight_decay", c.weight_decay},
                          {"batch_size", c.batch_size},
                          {"grad_accum_steps", c.grad_accum_steps},
                          {"precision", c.precision},
                          {"epochs", c.epochs}};
}

// Applies overrides onto the defaults and returns the serialized config
// (sorted keys; nlohmann objects are ordered maps). Unknown fields fail.
inline std::string emit_train_config(const nlohmann::json& overrides) {
    nlohmann::json config = train_config_to_json(TrainConfig{});
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
        if (!config.contains(it.key()))
            throw UnknownField(it.key());
        config[it.key()] = it.value();
    }
    return config.dump(2) + "\n";
}

// --- training-set export ---

struct ExportPaths {
    std::filesystem::path train_jsonl;
    std::filesystem::path eval_jsonl;
    std::filesystem::path train_array;
    std::filesystem::path eval_array;
    std::filesystem::path manifest;
};

inline ExportPaths default_export_paths(const std::filesystem::path& run_dir) {
    return {run_dir / "train.jsonl", run_dir / "eval.jsonl", run_dir / "train.json",
            run_dir / "eval.json", run_dir / "export_manifest.json"};
}

namespace detail {

inline void write_records(const ExportPaths& paths, const std::vector<TrainRecord>& train,
                          const std::vector<TrainRecord>& eval_records) {
    auto record_json = [](const TrainRecord& r) {
        return nlohmann::json{{"instruction", r.instruction}, {"input", r.input}, {"output", r.output}};
    };
    auto dump_jsonl = [&](const std::filesystem::path& path, const std::vector<TrainRecord>& records) {
        std::string out;
        for (const auto& r : records) {
            out += record_json(r).dump();
            out += '\n';
        }
        write_file(path, out);
    };
    auto dump_array = [&](const std::filesystem::path& path, const std::vector<TrainRecord>& records) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records)
            arr.push_back(record_json(r));
        write_file(path, arr.dump(2) + "\n");
    };
    dump_jsonl(paths.train_jsonl, train);
    dump_jsonl(paths.eval_jsonl, eval_records);
    dump_array(paths.train_array, train);
    dump_array(paths.eval_array, eval_records);
    nlohmann::json manifest{{"train_jsonl", paths.train_jsonl.filename().string()},
                            {"eval_jsonl", paths.eval_jsonl.filename().string()},
                            {"train_array", paths.train_array.filename().string()},
                            {"eval_array", paths.eval_array.filename().string()},
                            {"n_train", train.size()},
                            {"n_eval", eval_records.size()}};
    write_file(paths.manifest, manifest.dump(2) + "\n");
}

} // namespace detail

// Exports one round: selected ids feed the training file from their
// training-phase reports, held-out ids feed the evaluation file from their
// evaluation-phase reports. Record order follows the round's id order.
inline std::pair<std::vector<TrainRecord>, std::vector<TrainRecord>>
export_training_set(const std::vector<gateway::Report>& reports, const select::SplitRound& round,
                    const std::string& backend_name, prompt::PromptKind kind,
                    const ExportPaths& paths) {
    if (round.selected_ids.empty())
        throw Error("export_training_set: empty selected set");

    std::map<std::pair<std::string, int>, const gateway::Report*> by_key;
    for (const auto& r : reports) {
        if (r.backend_name != backend_name || r.prompt_kind != kind)
            continue;
        by_key[{r.sample_id, static_cast<int>(r.phase)}] = &r;
    }

    auto record_for = [&](const std::string& sample_id, prompt::Phase phase) {
        auto it = by_key.find({sample_id, static_cast<int>(phase)});
        if (it == by_key.end())
            throw MissingReport(sample_id);
        const gateway::Report& r = *it->second;
        bool sample_vulnerable = sample_id.size() >= 5 && sample_id.substr(sample_id.size() - 5) == ":vuln";
        if ((r.label == gateway::Label::Positive) != sample_vulnerable)
            throw LabelMismatch(r.report_id);
        return TrainRecord{kClassifyInstruction, r.text, to_string(r.label)};
    };

    std::vector<TrainRecord> train;
    train.reserve(round.selected_ids.size());
    for (const auto& id : round.selected_ids)
        train.push_back(record_for(id, prompt::Phase::Training));
    std::vector<TrainRecord> eval_records;
    eval_records.reserve(round.held_out_ids.size());
    for (const auto& id : round.held_out_ids)
        eval_records.push_back(record_for(id, prompt::Phase::Evaluation));

    detail::write_records(paths, train, eval_records);
    return {train, eval_records};
}

// --- LoRA reference arithmetic ---

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& detail) : Error("shape mismatch: " + detail) {}
};

struct InvalidRank : Error {
    explicit InvalidRank(size_t r, size_t d, size_t k)
        : Error("rank " + std::to_string(r) + " exceeds min(" + std::to_string(d) + ", " +
                std::to_string(k) + ")") {}
};

struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data; // row-major

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(size_t i, size_t j) { return data[i * cols + j]; }
    double at(size_t i, size_t j) const { return data[i * cols + j]; }
};

struct LoraFactors {
    Matrix W; // d x k
    Matrix A; // d x r
    Matrix B; // r x k
};

// W' = W + AB
inline Matrix lora_effective_weight(const LoraFactors& f) {
    const size_t d = f.W.rows, k = f.W.cols, r = f.A.cols;
    if (f.A.rows != d || f.B.rows != r || f.B.cols != k)
        throw ShapeMismatch("W is " + std::to_string(d) + "x" + std::to_string(k) + ", A is " +
                            std::to_string(f.A.rows) + "x" + std::to_string(f.A.cols) + ", B is " +
                            std::to_string(f.B.rows) + "x" + std::to_string(f.B.cols));
    if (r > std::min(d, k))
        throw InvalidRank(r, d, k);
    Matrix out(d, k);
    for (size_t i = 0; i < d; ++i)
        for (size_t t = 0; t < r; ++t) {
            double a = f.A.at(i, t);
            for (size_t j = 0; j < k; ++j)
                out.at(i, j) += a * f.B.at(t, j);
        }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < k; ++j)
            out.at(i, j) += f.W.at(i, j);
    return out;
}

struct LoraSaving {
    uint64_t trainable = 0; // r * (d + k)
    uint64_t full = 0;      // d * k
    double ratio = 0.0;
    bool no_saving = false; // trainable >= full; r is not << d, k
};

inline LoraSaving lora_param_saving(uint64_t d, uint64_t k, uint64_t r) {
    if (r > std::min(d, k))
        throw InvalidRank(r, d, k);
    LoraSaving s;
    s.trainable = r * (d + k);
    s.full = d * k;
    s.ratio = static_cast<double>(s.trainable) / static_cast<double>(s.full);
    s.no_saving = s.trainable >= s.full;
    return s;
}

} // namespace halu::finetune
