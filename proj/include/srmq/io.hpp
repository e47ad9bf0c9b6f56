#pragma once

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>

#include "srmq/error.hpp"

namespace srmq {

// Command files: "-" is standard input/output, a ".gz" suffix selects gzip.

[[nodiscard]] inline bool is_gzip_path(std::string_view path) noexcept {
    return path.size() > 3 && path.substr(path.size() - 3) == ".gz";
}

[[nodiscard]] inline std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    if (is_gzip_path(path)) {
        gzFile file = gzopen(path.c_str(), "rb");
        if (file == nullptr) throw error(ErrorKind::io, "cannot open " + path);
        std::string out;
        char buf[1 << 16];
        int got = 0;
        while ((got = gzread(file, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
        const bool failed = got < 0;
        gzclose(file);
        if (failed) throw error(ErrorKind::io, "read error in " + path);
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(ErrorKind::io, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::string& path, std::string_view text) {
    if (path == "-") {
        std::cout.write(text.data(), static_cast<std::streamsize>(text.size()));
        std::cout.flush();
        if (!std::cout) throw error(ErrorKind::io, "write error on standard output");
        return;
    }
    if (is_gzip_path(path)) {
        gzFile file = gzopen(path.c_str(), "wb");
        if (file == nullptr) throw error(ErrorKind::io, "cannot open " + path);
        std::size_t done = 0;
        while (done < text.size()) {
            const auto chunk = static_cast<unsigned>(std::min<std::size_t>(text.size() - done, 1u << 20));
            if (gzwrite(file, text.data() + done, chunk) != static_cast<int>(chunk)) {
                gzclose(file);
                throw error(ErrorKind::io, "write error in " + path);
            }
            done += chunk;
        }
        if (gzclose(file) != Z_OK) throw error(ErrorKind::io, "write error in " + path);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw error(ErrorKind::io, "write error in " + path);
}

}  // namespace srmq
