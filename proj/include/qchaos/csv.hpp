#ifndef QCHAOS_CSV_HPP
#define QCHAOS_CSV_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qchaos/errors.hpp"

namespace qchaos::csv {

// Artifact number format: '.' decimal separator, scientific notation for
// |v| < 1e-4 or |v| > 1e6, enough digits to round-trip exactly.
inline std::string fmt(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const double a = std::fabs(v);
    if (a < 1e-4 || a > 1e6)
        std::snprintf(buf, sizeof(buf), "%.16e", v);
    else
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

// Write via temp file + rename so partially written artifacts never appear.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw numeric_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw numeric_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

// Accumulates a CSV in memory; commit() writes it atomically.
class Table {
  public:
    explicit Table(std::vector<std::string> header) {
        body_ += join(header);
        body_ += '\n';
    }

    void row(const std::vector<double>& vals) {
        std::vector<std::string> cells;
        cells.reserve(vals.size());
        for (double v : vals) cells.push_back(fmt(v));
        body_ += join(cells);
        body_ += '\n';
    }

    void row(const std::vector<std::string>& cells) {
        body_ += join(cells);
        body_ += '\n';
    }

    const std::string& text() const { return body_; }

    void commit(const std::filesystem::path& path) const { atomic_write(path, body_); }

  private:
    std::string body_;
};

struct Parsed {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw numeric_error("csv column not found: " + name);
    }

    double num(std::size_t r, int c) const { return std::stod(rows[r][c]); }
};

inline Parsed read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw missing_dependency("cannot read: " + path.string());
    Parsed p;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            p.header = cells;
            first = false;
        } else {
            p.rows.push_back(cells);
        }
    }
    return p;
}

} // namespace qchaos::csv

#endif
