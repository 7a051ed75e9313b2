// csv.hpp — deterministic CSV emission: '#' metadata lines, header, rows,
// floating values at 17 significant digits (round-trip exact).

#pragma once

#include <string>
#include <vector>

namespace optomech::cli {

struct CsvSeries {
    std::vector<std::string> metadata;              // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;     // preformatted cells
};

std::string format_double(double value);

std::string to_text(const CsvSeries& series);

// Write via a temporary file and rename, so a failed run never leaves a
// partial output behind.
void write_text_file(const std::string& text, const std::string& path);
void write_csv(const CsvSeries& series, const std::string& path);

} // namespace optomech::cli
