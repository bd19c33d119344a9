#include "recobs/csvio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "recobs/errors.hpp"

namespace recobs::csv {

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string fmt(std::int64_t x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }

std::size_t Table::col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw Error("csv: no column named '" + name + "'");
}

double Table::num(std::size_t row, std::size_t c) const {
    const std::string& s = rows.at(row).at(c);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error("csv: cell '" + s + "' is not a number");
    return v;
}

Writer::Writer(std::vector<std::string> header) : header_(std::move(header)) {}

void Writer::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw Error("csv: row width " + std::to_string(cells.size()) +
                    " does not match header width " + std::to_string(header_.size()));
    rows_.push_back(std::move(cells));
}

std::string Writer::str() const {
    std::ostringstream out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out.str();
}

void Writer::write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("csv: cannot open '" + path.string() + "' for writing");
    f << str();
}

Table parse(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != t.header.size())
                throw Error("csv: ragged row while parsing");
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

Table read(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("csv: cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

}  // namespace recobs::csv
