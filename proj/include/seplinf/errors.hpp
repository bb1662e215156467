#pragma once

#include <stdexcept>
#include <string>

namespace seplinf {

// Bad user input: unknown builtin, malformed spec string or file. CLI exit 64.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource guard tripped (problem too large). CLI exit 65.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace seplinf
