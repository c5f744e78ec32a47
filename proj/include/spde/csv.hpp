#pragma once

#include "spde/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace spde::csv {

// 17 significant digits: doubles round-trip exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// RFC-style quoting; only needed for text fields, numbers never qualify.
inline std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Comma-separated, LF line endings, UTF-8. An empty path writes to stdout.
class Writer {
public:
    explicit Writer(const std::string& path) {
        if (path.empty() || path == "-") {
            out_ = &std::cout;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw io_error("cannot open output file: " + path);
        out_ = &file_;
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) *out_ << ',';
            *out_ << quote(fields[i]);
        }
        *out_ << '\n';
        if (!*out_) throw io_error("write failure on CSV output");
    }

    void close() {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw io_error("close failure on CSV output");
        }
    }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

}  // namespace spde::csv
