// io.hpp — deterministic CSV emission (17 significant digits, LF endings,
// mandatory header), atomic file writes, and FNV-1a checksums for the
// one-line artifact summaries.

#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "collapse/errors.hpp"

namespace collapse::io {

// Shortest representation that round-trips a double exactly.
inline void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string serialize() const {
        std::string out;
        out.reserve(64 + rows.size() * (header.size() * 26));
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            out += header[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                append_double(out, row[i]);
            }
            out += '\n';
        }
        return out;
    }
};

inline CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            table.header = cells;
            first = false;
        } else {
            std::vector<double> row;
            row.reserve(cells.size());
            for (const auto& cell : cells) {
                char* end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                if (end == cell.c_str()) throw IoError("parse_csv: bad numeric cell '" + cell + "'");
                row.push_back(v);
            }
            table.rows.push_back(std::move(row));
        }
    }
    if (first) throw IoError("parse_csv: missing header row");
    return table;
}

inline std::uint64_t fnv1a64(std::span<const char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

// Writes through a temp file in the same directory and renames it into
// place, so partially written artifacts are never observable.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = path.string() + ".tmp";

    std::FILE* f = std::fopen(tmp.string().c_str(), "wb");
    if (!f) throw IoError("atomic_write: cannot open " + tmp.string() + ": " + std::strerror(errno));
    const std::size_t written = std::fwrite(content.data(), 1, content.size(), f);
    const bool flush_ok = std::fflush(f) == 0;
    std::fclose(f);
    if (written != content.size() || !flush_ok) {
        fs::remove(tmp, ec);
        throw IoError("atomic_write: short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("atomic_write: rename failed: " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) throw IoError("read_file: cannot open " + path.string());
    std::string out;
    char buf[1 << 16];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

struct ArtifactSummary {
    std::string path;
    std::size_t rows = 0; // data rows (header excluded), 0 for JSON artifacts
    std::uint64_t checksum = 0;
};

inline ArtifactSummary write_artifact(const std::filesystem::path& path, const CsvTable& table) {
    const std::string content = table.serialize();
    atomic_write(path, content);
    return {path.string(), table.rows.size(), fnv1a64(content)};
}

inline ArtifactSummary write_artifact(const std::filesystem::path& path,
                                      const std::string& content) {
    atomic_write(path, content);
    return {path.string(), 0, fnv1a64(content)};
}

} // namespace collapse::io
