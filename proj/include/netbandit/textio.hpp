#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace netbandit {

// Real values in CSV output carry 6 significant digits ('.' decimal
// separator, round-half-even via the usual binary-nearest printf path).
inline std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

// Reads a whole file; io_error if it cannot be read.
std::string read_text_file(const std::string& path);

// Writes bytes, creating parent directories as needed; io_error on failure.
void write_text_file(const std::string& path, const std::string& bytes);

}  // namespace netbandit
