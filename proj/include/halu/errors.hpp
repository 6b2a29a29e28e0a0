#pragma once

#include <stdexcept>
#include <string>

namespace halu {

// Root of every error this library throws. Stage runners catch this to
// attribute failures; anything else escaping a stage is a bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A generation, classification, or embedding backend that cannot be
// reached (after retries, where a retry policy applies).
struct BackendUnavailable : Error {
    std::string backend_name;
    BackendUnavailable(const std::string& name, const std::string& detail)
        : Error("backend '" + name + "' unavailable: " + detail), backend_name(name) {}
};

} // namespace halu
