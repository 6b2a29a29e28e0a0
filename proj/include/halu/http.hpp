#pragma once

// Wire clients, kept out of the core headers so mock-only builds never
// touch the HTTP stack.

#include <cstdlib>
#include <string>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "halu/fetch.hpp"
#include "halu/gateway.hpp"

namespace halu::gateway {

namespace detail {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path; // /rest, at least "/"
};

inline SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error("not an absolute URL: " + url);
    auto path_begin = url.find('/', scheme_end + 3);
    if (path_begin == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_begin), url.substr(path_begin)};
}

} // namespace detail

// Chat-completion wire client compatible with OpenAI-style endpoints.
// Serves both contracts: report generation and verdict classification.
class HttpChatBackend : public GeneratorBackend, public ClassifierBackend {
public:
    explicit HttpChatBackend(BackendSpec spec) : spec_(std::move(spec)) {}

    std::string generate(const prompt::RenderedPrompt& prompt) override {
        return complete(prompt.text);
    }

    std::string classify(const std::string& report_text) override {
        return complete(std::string(kClassifierInstruction) + report_text);
    }

    std::string name() const override { return spec_.name; }

    std::string complete(const std::string& content) {
        auto url = detail::split_url(spec_.endpoint);
        httplib::Client client(url.base);
        client.set_read_timeout(static_cast<int>(spec_.timeout_s), 0);
        client.set_connection_timeout(static_cast<int>(spec_.timeout_s), 0);

        httplib::Headers headers;
        if (!spec_.api_key_env.empty()) {
            const char* key = std::getenv(spec_.api_key_env.c_str());
            if (key && *key)
                headers.emplace("Authorization", std::string("Bearer ") + key);
        }

        nlohmann::json body{{"model", spec_.model_id},
                            {"messages", nlohmann::json::array({{{"role", "user"}, {"content", content}}})},
                            {"temperature", spec_.temperature},
                            {"max_tokens", spec_.max_output_tokens}};

        auto res = client.Post(url.path, headers, body.dump(), "application/json");
        if (!res)
            throw BackendUnavailable(spec_.name, httplib::to_string(res.error()));
        if (res->status != 200)
            throw BackendUnavailable(spec_.name, "HTTP " + std::to_string(res->status));
        try {
            auto j = nlohmann::json::parse(res->body);
            return j.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& ex) {
            throw BackendUnavailable(spec_.name, std::string("malformed reply: ") + ex.what());
        }
    }

private:
    BackendSpec spec_;
};

} // namespace halu::gateway

namespace halu::corpus {

// GET via HTTP(S); commit URLs without a .patch suffix get one appended so
// forges return the raw patch body.
class HttpPatchFetcher : public PatchFetcher {
public:
    explicit HttpPatchFetcher(double timeout_s = 30.0) : timeout_s_(timeout_s) {}

    FetchResult fetch(const std::string& url) override {
        std::string target = url;
        if (target.size() < 6 || target.substr(target.size() - 6) != ".patch")
            target += ".patch";
        auto parts = gateway::detail::split_url(target);
        httplib::Client client(parts.base);
        client.set_follow_location(true);
        client.set_read_timeout(static_cast<int>(timeout_s_), 0);
        client.set_connection_timeout(static_cast<int>(timeout_s_), 0);
        auto res = client.Get(parts.path);
        if (!res)
            return {0, ""};
        return {res->status, res->body};
    }

private:
    double timeout_s_;
};

} // namespace halu::corpus
