// commands.hpp — subcommand implementations, exposed as a library so tests
// can drive them in-process.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "csv.hpp"

namespace optomech::cli {

CsvSeries run_spectrum(const RunConfig& config);
CsvSeries run_echo(const RunConfig& config);
CsvSeries run_fidelity(const RunConfig& config);
CsvSeries run_variance(const RunConfig& config);
CsvSeries run_regime_map(const RunConfig& config);

struct ValidateReport {
    std::vector<std::pair<std::string, std::string>> entries;
    bool passed{false};
    std::string failed_check;

    std::string to_text() const;
};

// Full oracle suite plus the printed-formula adjudications. `gamma_details`
// additionally reports per-branch gamma under both exponent readings.
ValidateReport run_validate(const RunConfig& config, bool gamma_details = false);

} // namespace optomech::cli
