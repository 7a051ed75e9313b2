// config.hpp — run configuration: JSON schema, validation, unit handling
//
// Frequencies in SI-mode configs are ordinary frequencies in Hz and are
// multiplied by 2*pi on load; scaled-mode configs (the default) are taken as
// angular frequencies in natural units, typically mass = omega_m = 1.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "optomech/params.hpp"

namespace optomech::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class UnitMode { Scaled, SI };

struct TimeGrid {
    double start{0.0};
    double stop{1.0};
    int steps{2};
};

struct Sweep {
    std::string parameter;   // "x", "omega_m", "omega_0", "omega_c", "eta", "g_total", "mass"
    double start{0.0};       // input units (Hz in SI mode for frequencies)
    double stop{1.0};
    int points{2};
    bool log_scale{false};

    // grid point in input units
    double value_at(int i) const;
};

struct CoeffOverride {
    double alpha{0.0};   // angular, after unit conversion
    double beta{0.0};
};

struct BranchSpec {
    ModeIndex index;
    std::optional<CoeffOverride> override_coeffs;
};

struct OracleConfig {
    bool enabled{false};
    int start_cutoff{16};
    double tol{1e-8};
    int max_cutoff{1024};
    int tripartite_cutoff{6};
    std::size_t memory_budget_mb{512};
};

struct ToleranceConfig {
    double spectrum{1e-10};
    double ladder{1e-8};
    double echo_oracle{1e-6};
    double variance_oracle{1e-6};
    double identity{1e-12};
    double critical{1e-12};
};

struct RunConfig {
    UnitMode mode{UnitMode::Scaled};
    SystemParams params;              // angular units
    std::vector<BranchSpec> branches;
    TimeGrid time_grid;
    std::optional<Sweep> sweep;
    OracleConfig oracle;
    ToleranceConfig tolerances;
    std::string output_path;
    int threads{1};

    // frequency multiplier applied on load (2*pi in SI mode, 1 in scaled mode)
    double frequency_scale{1.0};
    std::uint64_t config_hash{0};
};

// Parses and validates a config document; throws ConfigError on any problem,
// including unknown keys. A mode override (--scaled / --si) replaces the
// document's "mode" before parsing, so unit conversion stays consistent.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path,
                           std::optional<UnitMode> mode_override = std::nullopt);

// Canonical serialization of the effective configuration and its FNV-1a hash.
nlohmann::json effective_json(const RunConfig& config);
std::uint64_t hash_config(const RunConfig& config);

} // namespace optomech::cli
