#pragma once

// Independent reference implementations the tests check the library
// against. Everything here recomputes from first principles in long
// double and never calls the code under test.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracles {

inline long double cosine(const std::vector<double>& u, const std::vector<double>& w) {
    long double dot = 0.0L, nu = 0.0L, nw = 0.0L;
    for (size_t i = 0; i < u.size(); ++i) {
        dot += static_cast<long double>(u[i]) * static_cast<long double>(w[i]);
        nu += static_cast<long double>(u[i]) * static_cast<long double>(u[i]);
        nw += static_cast<long double>(w[i]) * static_cast<long double>(w[i]);
    }
    return dot / (std::sqrt(nu) * std::sqrt(nw));
}

// Literal step-by-step replay of the greedy diverse-selection rule: pick a random
// first element, then repeatedly scan every remaining element for the one
// least similar to the most recently selected, strict <, first-seen wins.
// The loop target is ceil(p * initial size), taken here through exact
// integer arithmetic on the rational p = num/den.
inline std::vector<std::string> diverse_select(const std::vector<std::string>& ids,
                                               const std::map<std::string, std::vector<double>>& vecs,
                                               uint64_t p_num, uint64_t p_den, uint64_t seed) {
    const size_t n0 = ids.size();
    const size_t target = static_cast<size_t>((p_num * n0 + p_den - 1) / p_den);
    std::vector<std::string> remaining = ids;
    std::vector<std::string> selected;

    std::mt19937_64 rng(seed);
    size_t first = static_cast<size_t>(rng() % remaining.size());
    selected.push_back(remaining[first]);
    remaining.erase(remaining.begin() + static_cast<long>(first));

    while (selected.size() < target) {
        long double min_sim = 1.0L;
        size_t candidate = remaining.size();
        const auto& last = vecs.at(selected.back());
        for (size_t i = 0; i < remaining.size(); ++i) {
            long double sim = cosine(last, vecs.at(remaining[i]));
            if (sim < min_sim) {
                min_sim = sim;
                candidate = i;
            }
        }
        if (candidate == remaining.size())
            candidate = 0;
        selected.push_back(remaining[candidate]);
        remaining.erase(remaining.begin() + static_cast<long>(candidate));
    }
    return selected;
}

struct RefMetrics {
    long double accuracy, precision, recall, f1;
};

inline RefMetrics metrics(uint64_t tp, uint64_t tn, uint64_t fp, uint64_t fn) {
    RefMetrics m{};
    long double total = static_cast<long double>(tp + tn + fp + fn);
    m.accuracy = (tp + tn) / total;
    m.precision = (tp + fp) == 0 ? 0.0L : static_cast<long double>(tp) / (tp + fp);
    m.recall = (tp + fn) == 0 ? 0.0L : static_cast<long double>(tp) / (tp + fn);
    m.f1 = (m.precision + m.recall) == 0.0L ? 0.0L
                                            : 2.0L * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

// C = W + A*B, straight triple loop.
inline std::vector<std::vector<long double>> lora_weight(const std::vector<std::vector<double>>& W,
                                                         const std::vector<std::vector<double>>& A,
                                                         const std::vector<std::vector<double>>& B) {
    size_t d = W.size(), k = W[0].size(), r = A[0].size();
    std::vector<std::vector<long double>> out(d, std::vector<long double>(k, 0.0L));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < k; ++j) {
            long double acc = W[i][j];
            for (size_t t = 0; t < r; ++t)
                acc += static_cast<long double>(A[i][t]) * static_cast<long double>(B[t][j]);
            out[i][j] = acc;
        }
    return out;
}

} // namespace oracles
