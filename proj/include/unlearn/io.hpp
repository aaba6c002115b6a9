#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unlearn/errors.hpp"

namespace unlearn {

// 17 significant digits: round-trips any IEEE754 double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw FormatError("trailing characters in number: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw FormatError("not a number: " + s);
    } catch (const std::out_of_range&) {
        throw FormatError("number out of range: " + s);
    }
}

// All CSVs use UTF-8, LF line endings and '.' decimal separator.
class CsvWriter {
public:
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw FormatError("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Binary 8-bit PGM (P5). Values are rescaled from [lo, hi] to 0..255.
inline void write_pgm(const std::filesystem::path& path, const std::vector<double>& pixels,
                      std::size_t width, std::size_t height, double lo = 0.0, double hi = 1.0) {
    if (pixels.size() != width * height) throw ShapeError("pgm: pixel count != width*height");
    if (!(hi > lo)) throw ArgumentError("pgm: invalid value range");
    std::string body;
    body.reserve(pixels.size());
    for (double p : pixels) {
        double t = (p - lo) / (hi - lo);
        if (t < 0.0) t = 0.0;
        if (t > 1.0) t = 1.0;
        body.push_back(static_cast<char>(static_cast<unsigned char>(t * 255.0 + 0.5)));
    }
    std::ostringstream header;
    header << "P5\n" << width << " " << height << "\n255\n";
    write_text_file(path, header.str() + body);
}

}  // namespace unlearn
