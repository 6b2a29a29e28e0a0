#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "halu/errors.hpp"
#include "halu/util.hpp"

namespace halu::select {

struct ZeroVector : Error {
    std::string source_id;
    explicit ZeroVector(const std::string& id)
        : Error("zero embedding vector for '" + id + "'"), source_id(id) {}
};

struct DimensionMismatch : Error {
    size_t dim_u, dim_w;
    DimensionMismatch(size_t u, size_t w)
        : Error("dimension mismatch: " + std::to_string(u) + " vs " + std::to_string(w)),
          dim_u(u), dim_w(w) {}
};

class EmbeddingVector {
public:
    EmbeddingVector(std::vector<double> values, std::string source_id)
        : values_(std::move(values)), source_id_(std::move(source_id)) {
        bool nonzero = false;
        for (double v : values_)
            if (v != 0.0)
                nonzero = true;
        if (values_.empty() || !nonzero)
            throw ZeroVector(source_id_);
    }

    size_t dim() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    const std::string& source_id() const { return source_id_; }

private:
    std::vector<double> values_;
    std::string source_id_;
};

// sim(U, W) = (U . W) / (||U|| ||W||)
inline double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& w) {
    if (u.dim() != w.dim())
        throw DimensionMismatch(u.dim(), w.dim());
    double dot = 0.0, nu = 0.0, nw = 0.0;
    for (size_t i = 0; i < u.dim(); ++i) {
        dot += u.values()[i] * w.values()[i];
        nu += u.values()[i] * u.values()[i];
        nw += w.values()[i] * w.values()[i];
    }
    return dot / (std::sqrt(nu) * std::sqrt(nw));
}

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual EmbeddingVector embed(const std::string& text, const std::string& source_id) = 0;
    virtual size_t dim() const = 0;
    virtual std::string name() const = 0;
};

// Seeded hash of the text expanded to a fixed-width real vector, then
// normalized. Stands in for a code-model encoder in offline runs and
// tests; the expansion is pinned to mt19937_64 so results are identical
// everywhere.
class MockEmbeddingBackend : public EmbeddingBackend {
public:
    explicit MockEmbeddingBackend(uint64_t seed = 0, size_t dim = 64) : seed_(seed), dim_(dim) {}

    EmbeddingVector embed(const std::string& text, const std::string& source_id) override {
        if (text.empty())
            throw Error("embed: empty text for '" + source_id + "'");
        std::mt19937_64 rng(fnv1a64(text) ^ seed_);
        std::vector<double> values(dim_);
        double norm = 0.0;
        for (auto& v : values) {
            v = unit_double(rng()) * 2.0 - 1.0;
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0)
            throw ZeroVector(source_id);
        for (auto& v : values)
            v /= norm;
        return EmbeddingVector(std::move(values), source_id);
    }

    size_t dim() const override { return dim_; }
    std::string name() const override { return "mock-embed"; }

private:
    uint64_t seed_;
    size_t dim_;
};

// --- embeddings cache ({id, dim, values} JSON Lines) ---

inline void save_embeddings(const std::filesystem::path& path,
                            const std::vector<EmbeddingVector>& vectors) {
    std::string out;
    for (const auto& v : vectors) {
        nlohmann::json j{{"id", v.source_id()}, {"dim", v.dim()}, {"values", v.values()}};
        out += j.dump();
        out += '\n';
    }
    write_file(path, out);
}

inline std::vector<EmbeddingVector> load_embeddings(const std::filesystem::path& path) {
    std::vector<EmbeddingVector> vectors;
    for (const auto& line : split_lines(read_file(path))) {
        if (trim(line).empty())
            continue;
        auto j = nlohmann::json::parse(line);
        vectors.emplace_back(j.at("values").get<std::vector<double>>(), j.at("id").get<std::string>());
    }
    return vectors;
}

} // namespace halu::select
