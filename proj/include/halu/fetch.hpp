#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "halu/errors.hpp"
#include "halu/manifest.hpp"
#include "halu/util.hpp"

namespace halu::corpus {

struct FetchResult {
    int status = 0;
    std::string body;
};

// Anything that can turn a patch URL into bytes: the network client, a
// fixture map in tests, or nothing at all when the cache must hit.
class PatchFetcher {
public:
    virtual ~PatchFetcher() = default;
    virtual FetchResult fetch(const std::string& url) = 0;
};

struct FetchFailed : Error {
    int status;
    std::string url;
    FetchFailed(int s, const std::string& u)
        : Error("fetch failed (" + std::to_string(s) + "): " + u), status(s), url(u) {}
};

struct EmptyPatch : Error {
    std::string url;
    explicit EmptyPatch(const std::string& u) : Error("empty patch body: " + u), url(u) {}
};

class FixtureFetcher : public PatchFetcher {
public:
    void add(const std::string& url, std::string body) { bodies_[url] = std::move(body); }

    FetchResult fetch(const std::string& url) override {
        auto it = bodies_.find(url);
        if (it == bodies_.end())
            return {404, ""};
        return {200, it->second};
    }

private:
    std::map<std::string, std::string> bodies_;
};

// Refuses every fetch; used when a run must stay offline.
class OfflineFetcher : public PatchFetcher {
public:
    FetchResult fetch(const std::string& url) override {
        throw FetchFailed(0, url + " (offline mode, cache miss)");
    }
};

inline std::filesystem::path patch_cache_path(const std::filesystem::path& corpus_dir,
                                              const std::string& cve_id) {
    return corpus_dir / "patches" / (cve_id + ".patch");
}

// Returns the byte-exact patch body, caching under the corpus dir so
// reruns are offline. A warm cache performs zero fetcher invocations.
inline std::string fetch_patch(const CveEntry& entry, PatchFetcher& fetcher,
                               const std::filesystem::path& corpus_dir) {
    auto cache = patch_cache_path(corpus_dir, entry.cve_id);
    if (std::filesystem::exists(cache))
        return read_file(cache);
    FetchResult res = fetcher.fetch(entry.patch_url);
    if (res.status != 200)
        throw FetchFailed(res.status, entry.patch_url);
    if (res.body.empty())
        throw EmptyPatch(entry.patch_url);
    write_file(cache, res.body);
    return res.body;
}

} // namespace halu::corpus
