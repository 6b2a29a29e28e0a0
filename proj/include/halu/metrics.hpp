#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "halu/cwe.hpp"
#include "halu/gateway.hpp"
#include "halu/select.hpp"

namespace halu::metrics {

struct ConfusionMatrix {
    size_t tp = 0, tn = 0, fp = 0, fn = 0;
    size_t total() const { return tp + tn + fp + fn; }
};

struct UnknownSample : Error {
    std::string sample_id;
    explicit UnknownSample(const std::string& id)
        : Error("classification for unknown sample '" + id + "'"), sample_id(id) {}
};

struct DuplicatePrediction : Error {
    std::string sample_id;
    explicit DuplicatePrediction(const std::string& id)
        : Error("duplicate prediction for sample '" + id + "'"), sample_id(id) {}
};

struct EmptyEvaluation : Error {
    EmptyEvaluation() : Error("no samples evaluated") {}
};

inline ConfusionMatrix confusion(const std::vector<gateway::Classification>& classifications,
                                 const std::map<std::string, gateway::Label>& truth) {
    ConfusionMatrix cm;
    std::set<std::string> seen;
    for (const auto& c : classifications) {
        auto it = truth.find(c.sample_id);
        if (it == truth.end())
            throw UnknownSample(c.sample_id);
        if (!seen.insert(c.sample_id).second)
            throw DuplicatePrediction(c.sample_id);
        bool pred_pos = c.predicted == gateway::Label::Positive;
        bool true_pos = it->second == gateway::Label::Positive;
        if (pred_pos && true_pos)
            ++cm.tp;
        else if (!pred_pos && !true_pos)
            ++cm.tn;
        else if (pred_pos)
            ++cm.fp;
        else
            ++cm.fn;
    }
    return cm;
}

// Zero-denominator metrics come back as 0 with a named flag instead of
// NaN, so aggregation stays total.
struct MetricsBundle {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::set<std::string> degenerate_flags;
};

inline MetricsBundle compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0)
        throw EmptyEvaluation();
    MetricsBundle m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    if (cm.tp + cm.fp == 0)
        m.degenerate_flags.insert("precision_zero_denominator");
    else
        m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    if (cm.tp + cm.fn == 0)
        m.degenerate_flags.insert("recall_zero_denominator");
    else
        m.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    if (m.precision + m.recall == 0.0)
        m.degenerate_flags.insert("f1_zero_denominator");
    else
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

// Cross-round summary: geometric mean with the maximum upward and
// downward deviations. Any zero round forces the gmean to 0, flagged.
struct MetricAggregate {
    double gmean = 0.0;
    double max_up = 0.0;
    double max_down = 0.0;
    std::vector<double> rounds;
    bool zero_round = false;
};

struct AggregateMetrics {
    MetricAggregate accuracy;
    MetricAggregate precision;
    MetricAggregate recall;
    MetricAggregate f1;
};

namespace detail {

inline MetricAggregate aggregate_values(std::vector<double> values) {
    MetricAggregate agg;
    agg.rounds = values;
    double max_v = values[0], min_v = values[0];
    bool any_zero = false;
    double log_sum = 0.0;
    for (double v : values) {
        max_v = std::max(max_v, v);
        min_v = std::min(min_v, v);
        if (v <= 0.0)
            any_zero = true;
        else
            log_sum += std::log(v);
    }
    if (any_zero) {
        agg.gmean = 0.0;
        agg.zero_round = true;
    } else {
        agg.gmean = std::exp(log_sum / static_cast<double>(values.size()));
    }
    agg.max_up = max_v - agg.gmean;
    agg.max_down = agg.gmean - min_v;
    return agg;
}

} // namespace detail

inline AggregateMetrics aggregate_rounds(const std::vector<MetricsBundle>& rounds) {
    if (rounds.empty())
        throw EmptyEvaluation();
    auto pick = [&](double MetricsBundle::*field) {
        std::vector<double> values;
        values.reserve(rounds.size());
        for (const auto& r : rounds)
            values.push_back(r.*field);
        return detail::aggregate_values(std::move(values));
    };
    AggregateMetrics agg;
    agg.accuracy = pick(&MetricsBundle::accuracy);
    agg.precision = pick(&MetricsBundle::precision);
    agg.recall = pick(&MetricsBundle::recall);
    agg.f1 = pick(&MetricsBundle::f1);
    return agg;
}

// --- CWE breakdown ---

struct UnseenVerdict {
    std::string cwe_id;
    bool predictable = false; // the lone positive sample classified correctly
};

struct BreakdownTables {
    std::map<std::string, MetricsBundle> per_category; // category name -> metrics
    std::vector<UnseenVerdict> unseen;                 // sorted by cwe id
    size_t unseen_correct = 0;
    double unseen_accuracy = 0.0; // 0 when no unseen positives were evaluated
};

inline BreakdownTables breakdown(const std::vector<gateway::Classification>& classifications,
                                 const std::map<std::string, gateway::Label>& truth,
                                 const std::map<std::string, std::string>& cwe_map,
                                 const select::CwePartition& partition) {
    BreakdownTables tables;

    std::map<std::string, std::vector<gateway::Classification>> by_category;
    for (const auto& c : classifications) {
        auto cwe_it = cwe_map.find(c.sample_id);
        if (cwe_it == cwe_map.end())
            throw UnknownSample(c.sample_id);
        by_category[to_string(corpus::categorize_cwe(cwe_it->second))].push_back(c);
    }
    for (const auto& [category, group] : by_category)
        tables.per_category[category] = compute_metrics(confusion(group, truth));

    // each unseen CWE is judged on its single positive sample, when evaluated
    std::map<std::string, bool> verdicts;
    for (const auto& c : classifications) {
        const std::string& cwe = cwe_map.at(c.sample_id);
        if (!partition.unseen_cwes.count(cwe))
            continue;
        auto t = truth.find(c.sample_id);
        if (t == truth.end())
            throw UnknownSample(c.sample_id);
        if (t->second != gateway::Label::Positive)
            continue;
        verdicts[cwe] = c.predicted == gateway::Label::Positive;
    }
    for (const auto& [cwe, ok] : verdicts) {
        tables.unseen.push_back({cwe, ok});
        if (ok)
            ++tables.unseen_correct;
    }
    if (!tables.unseen.empty())
        tables.unseen_accuracy =
            static_cast<double>(tables.unseen_correct) / static_cast<double>(tables.unseen.size());
    return tables;
}

// --- serialization ---

inline nlohmann::json bundle_to_json(const MetricsBundle& m) {
    return nlohmann::json{{"accuracy", m.accuracy},
                          {"precision", m.precision},
                          {"recall", m.recall},
                          {"f1", m.f1},
                          {"degenerate_flags", m.degenerate_flags}};
}

inline nlohmann::json aggregate_to_json(const MetricAggregate& a) {
    return nlohmann::json{{"gmean", a.gmean},       {"max_up", a.max_up}, {"max_down", a.max_down},
                          {"rounds", a.rounds},     {"zero_round", a.zero_round}};
}

inline nlohmann::json aggregates_to_json(const AggregateMetrics& a) {
    return nlohmann::json{{"accuracy", aggregate_to_json(a.accuracy)},
                          {"precision", aggregate_to_json(a.precision)},
                          {"recall", aggregate_to_json(a.recall)},
                          {"f1", aggregate_to_json(a.f1)}};
}

inline nlohmann::json breakdown_to_json(const BreakdownTables& t) {
    nlohmann::json per_category = nlohmann::json::object();
    for (const auto& [category, m] : t.per_category)
        per_category[category] = bundle_to_json(m);
    nlohmann::json unseen = nlohmann::json::array();
    for (const auto& v : t.unseen)
        unseen.push_back({{"cwe_id", v.cwe_id}, {"predictable", v.predictable}});
    return nlohmann::json{{"per_category", per_category},
                          {"unseen", unseen},
                          {"unseen_correct", t.unseen_correct},
                          {"unseen_accuracy", t.unseen_accuracy}};
}

// Human-readable results table: one row per (model, prompt), four
// metrics as gmean with +up/-down deviations.
inline std::string metrics_markdown(const std::string& model, const std::string& prompt_name,
                                    const AggregateMetrics& agg) {
    auto cell = [](const MetricAggregate& a) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.1f +%.1f/-%.1f", a.gmean * 100.0, a.max_up * 100.0,
                      a.max_down * 100.0);
        return std::string(buf);
    };
    std::string out;
    out += "| Model | Prompt | Accuracy | Precision | Recall | F1 Score |\n";
    out += "|-------|--------|----------|-----------|--------|----------|\n";
    out += "| " + model + " | " + prompt_name + " | " + cell(agg.accuracy) + " | " +
           cell(agg.precision) + " | " + cell(agg.recall) + " | " + cell(agg.f1) + " |\n";
    return out;
}

} // namespace halu::metrics
