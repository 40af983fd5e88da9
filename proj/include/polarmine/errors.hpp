#pragma once

#include <stdexcept>
#include <string>

namespace polarmine {

// Bad configuration or unusable inputs; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime I/O failure; the CLI maps this to exit code 1.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polarmine
