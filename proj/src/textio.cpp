#include "netbandit/textio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netbandit/errors.hpp"

namespace netbandit {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error("failed reading '" + path + "'");
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& bytes) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) {
            throw io_error("cannot create directory '" + p.parent_path().string() +
                           "': " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace netbandit
