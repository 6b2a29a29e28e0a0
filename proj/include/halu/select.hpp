#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "halu/embedding.hpp"
#include "halu/manifest.hpp"

namespace halu::select {

// One seeded partition: selected_ids is the fine-tuning set in selection
// order, held_out_ids the evaluation set in original order.
struct SplitRound {
    int round_index = 0;
    int64_t seed = 0;
    std::vector<std::string> selected_ids;
    std::vector<std::string> held_out_ids;
    double p = 0.0;
};

struct InvalidFraction : Error {
    double p;
    explicit InvalidFraction(double value)
        : Error("selection fraction must be in (0, 1], got " + std::to_string(value)), p(value) {}
};

struct MissingVector : Error {
    std::string id;
    explicit MissingVector(const std::string& missing)
        : Error("no embedding vector for id '" + missing + "'"), id(missing) {}
};

namespace detail {

// ceil(p * n) with a guard against p*n landing epsilon above an integer
// it mathematically equals.
inline size_t selection_target(double p, size_t n) {
    return static_cast<size_t>(std::ceil(p * static_cast<double>(n) - 1e-9));
}

} // namespace detail

// Greedy diverse selection: seed a uniformly random first pick, then
// repeatedly take the remaining id least cosine-similar to the most
// recently selected one (strict <, so the earliest candidate wins ties).
// The loop target is p times the INITIAL population size.
inline SplitRound diverse_select(const std::vector<std::string>& ids,
                                 const std::map<std::string, EmbeddingVector>& vectors,
                                 double p, int64_t seed) {
    if (!(p > 0.0) || p > 1.0)
        throw InvalidFraction(p);
    if (ids.empty())
        throw Error("diverse_select: empty id list");
    for (const auto& id : ids)
        if (vectors.find(id) == vectors.end())
            throw MissingVector(id);

    const size_t target = detail::selection_target(p, ids.size());
    std::vector<std::string> remaining = ids;
    SplitRound round;
    round.seed = seed;
    round.p = p;

    std::mt19937_64 rng(static_cast<uint64_t>(seed));
    size_t first = static_cast<size_t>(rng() % remaining.size());
    round.selected_ids.push_back(remaining[first]);
    remaining.erase(remaining.begin() + static_cast<long>(first));

    while (round.selected_ids.size() < target) {
        const EmbeddingVector& last = vectors.at(round.selected_ids.back());
        double min_sim = 1.0;
        size_t candidate = remaining.size(); // none
        for (size_t i = 0; i < remaining.size(); ++i) {
            double sim = cosine_similarity(last, vectors.at(remaining[i]));
            if (sim < min_sim) {
                min_sim = sim;
                candidate = i;
            }
        }
        if (candidate == remaining.size())
            candidate = 0; // every similarity hit the 1.0 bound exactly
        round.selected_ids.push_back(remaining[candidate]);
        remaining.erase(remaining.begin() + static_cast<long>(candidate));
    }
    round.held_out_ids = std::move(remaining);
    return round;
}

// k independent selection rounds, round i seeded with base_seed + i.
// Paired vulnerable/fixed samples may land on opposite sides; pair
// locking, when requested, happens a level up by selecting over pair
// representatives.
inline std::vector<SplitRound> make_rounds(const std::vector<std::string>& ids,
                                           const std::map<std::string, EmbeddingVector>& vectors,
                                           int k_rounds, double p, int64_t base_seed) {
    if (k_rounds < 1)
        throw Error("make_rounds: k_rounds must be >= 1");
    std::vector<SplitRound> rounds;
    rounds.reserve(static_cast<size_t>(k_rounds));
    for (int i = 0; i < k_rounds; ++i) {
        SplitRound r = diverse_select(ids, vectors, p, base_seed + i);
        r.round_index = i;
        rounds.push_back(std::move(r));
    }
    return rounds;
}

// --- unseen-CWE partition ---

struct CwePartition {
    std::set<std::string> seen_cwes;   // more than one positive sample
    std::set<std::string> unseen_cwes; // exactly one positive sample
};

inline CwePartition partition_unseen_cwe(const std::vector<corpus::CveEntry>& entries) {
    std::map<std::string, size_t> counts;
    for (const auto& e : entries)
        ++counts[e.cwe_id];
    CwePartition part;
    for (const auto& [cwe, n] : counts) {
        if (n == 1)
            part.unseen_cwes.insert(cwe);
        else
            part.seen_cwes.insert(cwe);
    }
    return part;
}

// --- splits file ---

inline nlohmann::json round_to_json(const SplitRound& r) {
    return nlohmann::json{{"round_index", r.round_index}, {"seed", r.seed},
                          {"selected_ids", r.selected_ids}, {"held_out_ids", r.held_out_ids},
                          {"p", r.p}};
}

inline SplitRound round_from_json(const nlohmann::json& j) {
    SplitRound r;
    r.round_index = j.at("round_index").get<int>();
    r.seed = j.at("seed").get<int64_t>();
    r.selected_ids = j.at("selected_ids").get<std::vector<std::string>>();
    r.held_out_ids = j.at("held_out_ids").get<std::vector<std::string>>();
    r.p = j.at("p").get<double>();
    return r;
}

inline void save_rounds(const std::filesystem::path& path, const std::vector<SplitRound>& rounds) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rounds)
        j.push_back(round_to_json(r));
    write_file(path, j.dump(2) + "\n");
}

inline std::vector<SplitRound> load_rounds(const std::filesystem::path& path) {
    auto j = nlohmann::json::parse(read_file(path));
    std::vector<SplitRound> rounds;
    for (const auto& item : j)
        rounds.push_back(round_from_json(item));
    return rounds;
}

} // namespace halu::select
