#ifndef RECOBS_CSVIO_HPP
#define RECOBS_CSVIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace recobs::csv {

// Shortest decimal form that parses back to the same double. Locale-free,
// '.' decimal separator, so reruns are byte-identical.
std::string fmt(double x);
std::string fmt(std::int64_t x);
std::string fmt(std::uint64_t x);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const;  // throws if absent
    double num(std::size_t row, std::size_t col) const;
};

// Writer that owns the header and enforces uniform row width.
class Writer {
public:
    explicit Writer(std::vector<std::string> header);
    void row(std::vector<std::string> cells);
    void write(const std::filesystem::path& path) const;
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

Table read(const std::filesystem::path& path);
Table parse(const std::string& text);

}  // namespace recobs::csv

#endif
