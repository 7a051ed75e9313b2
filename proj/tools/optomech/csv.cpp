#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace optomech::cli {

std::string format_double(double value) {
    if (std::isnan(value))
        return "nan";
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string to_text(const CsvSeries& series) {
    std::ostringstream out;
    for (const auto& line : series.metadata)
        out << "# " << line << '\n';
    for (std::size_t i = 0; i < series.columns.size(); ++i)
        out << (i ? "," : "") << series.columns[i];
    out << '\n';
    for (const auto& row : series.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& text, const std::string& path) {
    const std::filesystem::path target(path);
    const std::filesystem::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp);
        if (!out)
            throw std::runtime_error("cannot open output file: " + temp.string());
        out << text;
        if (!out)
            throw std::runtime_error("write failed: " + temp.string());
    }
    std::filesystem::rename(temp, target);
}

void write_csv(const CsvSeries& series, const std::string& path) {
    write_text_file(to_text(series), path);
}

} // namespace optomech::cli
