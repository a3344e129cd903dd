#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fragsim/errors.hpp"

namespace fragsim {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// RFC 4180 writer: CRLF records, comma separator, quoting only where
// needed. Doubles in full-precision scientific notation (17 significant
// digits); non-finite numeric cells become "inf"/"-inf" or empty for NaN.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open for writing: " + path);
        path_ = path;
    }

    void field(const std::string& s) {
        sep();
        if (s.find_first_of(",\"\r\n") != std::string::npos) {
            row_ += '"';
            for (char c : s) {
                if (c == '"') row_ += '"';
                row_ += c;
            }
            row_ += '"';
        } else {
            row_ += s;
        }
    }

    void field(const char* s) { field(std::string(s)); }

    void field(double v) {
        sep();
        if (std::isnan(v)) return;
        if (std::isinf(v)) {
            row_ += v > 0 ? "inf" : "-inf";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.16e", v);
        row_ += buf;
    }

    void field(bool v) {
        sep();
        row_ += v ? "true" : "false";
    }

    void field(int v) {
        sep();
        row_ += std::to_string(v);
    }

    void field(std::uint64_t v) {
        sep();
        row_ += std::to_string(v);
    }

    void end_row() {
        row_ += "\r\n";
        out_ << row_;
        if (!out_) throw IoError("write failed: " + path_);
        row_.clear();
        first_ = true;
    }

private:
    void sep() {
        if (!first_) row_ += ',';
        first_ = false;
    }

    std::ofstream out_;
    std::string path_;
    std::string row_;
    bool first_ = true;
};

} // namespace fragsim
