#pragma once

#include <stdexcept>
#include <string>

namespace netbandit {

// Invalid or contradictory user input (config files, CLI values, preconditions
// on user-supplied data).  CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is structurally valid but beyond an exact-search scale gate.
// CLI maps this to exit code 3.
struct scale_error : std::runtime_error {
    explicit scale_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure (unreadable input, unwritable output).
// CLI maps this to exit code 4.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace netbandit
