#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace optomech::cli {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

void require_keys(const nlohmann::json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object())
        throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.contains(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

double number(const nlohmann::json& obj, const std::string& where, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback)
            return *fallback;
        throw ConfigError(where + ": missing '" + key + "'");
    }
    if (!obj[key].is_number())
        throw ConfigError(where + ": '" + key + "' must be a number");
    return obj[key].get<double>();
}

int integer(const nlohmann::json& obj, const std::string& where, const std::string& key,
            std::optional<int> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback)
            return *fallback;
        throw ConfigError(where + ": missing '" + key + "'");
    }
    if (!obj[key].is_number_integer())
        throw ConfigError(where + ": '" + key + "' must be an integer");
    return obj[key].get<int>();
}

bool is_frequency_parameter(const std::string& name) {
    return name == "omega_m" || name == "omega_0" || name == "omega_c" || name == "g_total"
           || name == "eta";
}

} // namespace

double Sweep::value_at(int i) const {
    if (points < 2)
        return start;
    const double f = static_cast<double>(i) / (points - 1);
    if (log_scale)
        return start * std::pow(stop / start, f);
    return start + (stop - start) * f;
}

RunConfig parse_config(const nlohmann::json& doc) {
    require_keys(doc, "config",
                 {"mode", "params", "branches", "time_grid", "sweep", "oracle", "tolerances",
                  "output", "threads"});

    RunConfig config;

    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        if (mode == "scaled")
            config.mode = UnitMode::Scaled;
        else if (mode == "si")
            config.mode = UnitMode::SI;
        else
            throw ConfigError("config: mode must be 'scaled' or 'si'");
    }
    config.frequency_scale = (config.mode == UnitMode::SI) ? two_pi : 1.0;
    const double fs = config.frequency_scale;

    if (!doc.contains("params"))
        throw ConfigError("config: missing 'params'");
    const auto& params = doc["params"];
    require_keys(params, "params",
                 {"omega_0", "omega_c", "omega_m", "mass", "eta", "g_total", "n_atoms"});
    config.params.omega_0 = fs * number(params, "params", "omega_0");
    config.params.omega_c = fs * number(params, "params", "omega_c");
    config.params.omega_m = fs * number(params, "params", "omega_m");
    config.params.mass = number(params, "params", "mass", 1.0);
    config.params.eta = fs * number(params, "params", "eta", 0.0);
    config.params.g_total = fs * number(params, "params", "g_total", 0.0);
    config.params.n_atoms = integer(params, "params", "n_atoms", 1);
    try {
        config.params.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }

    if (doc.contains("branches")) {
        if (!doc["branches"].is_array())
            throw ConfigError("branches: expected an array");
        for (const auto& entry : doc["branches"]) {
            require_keys(entry, "branches[]", {"n_a", "n_b", "override"});
            BranchSpec spec;
            spec.index.n_a = integer(entry, "branches[]", "n_a");
            spec.index.n_b = integer(entry, "branches[]", "n_b");
            if (spec.index.n_a < 0 || spec.index.n_b < 0)
                throw ConfigError("branches[]: occupations must be nonnegative");
            if (entry.contains("override")) {
                require_keys(entry["override"], "branches[].override", {"alpha", "beta"});
                CoeffOverride ov;
                ov.alpha = fs * number(entry["override"], "override", "alpha");
                ov.beta = fs * number(entry["override"], "override", "beta");
                spec.override_coeffs = ov;
            }
            config.branches.push_back(spec);
        }
    }

    if (doc.contains("time_grid")) {
        const auto& grid = doc["time_grid"];
        require_keys(grid, "time_grid", {"start", "stop", "steps"});
        config.time_grid.start = number(grid, "time_grid", "start", 0.0);
        config.time_grid.stop = number(grid, "time_grid", "stop");
        config.time_grid.steps = integer(grid, "time_grid", "steps");
        if (config.time_grid.steps < 2)
            throw ConfigError("time_grid: steps must be >= 2");
        if (!(config.time_grid.stop > config.time_grid.start))
            throw ConfigError("time_grid: stop must exceed start");
    }

    if (doc.contains("sweep")) {
        const auto& sweep = doc["sweep"];
        require_keys(sweep, "sweep", {"parameter", "start", "stop", "points", "scale"});
        Sweep s;
        if (!sweep.contains("parameter"))
            throw ConfigError("sweep: missing 'parameter'");
        s.parameter = sweep["parameter"].get<std::string>();
        static const std::set<std::string> known{"x",       "omega_m", "omega_0", "omega_c",
                                                 "eta",     "g_total", "mass"};
        if (!known.contains(s.parameter))
            throw ConfigError("sweep: unknown parameter '" + s.parameter + "'");
        s.start = number(sweep, "sweep", "start");
        s.stop = number(sweep, "sweep", "stop");
        s.points = integer(sweep, "sweep", "points");
        if (s.points < 2)
            throw ConfigError("sweep: points must be >= 2");
        if (sweep.contains("scale")) {
            const std::string scale = sweep["scale"].get<std::string>();
            if (scale == "log")
                s.log_scale = true;
            else if (scale != "linear")
                throw ConfigError("sweep: scale must be 'linear' or 'log'");
        }
        if (s.log_scale && !(s.start > 0.0 && s.stop > 0.0))
            throw ConfigError("sweep: log scale requires positive bounds");
        if (is_frequency_parameter(s.parameter) && s.parameter != "eta"
            && (s.start <= 0.0 || s.stop <= 0.0))
            throw ConfigError("sweep: frequency ranges must be positive");
        config.sweep = s;
    }

    if (doc.contains("oracle")) {
        const auto& oracle = doc["oracle"];
        require_keys(oracle, "oracle",
                     {"enabled", "start_cutoff", "tol", "max_cutoff", "tripartite_cutoff",
                      "memory_budget_mb"});
        if (oracle.contains("enabled"))
            config.oracle.enabled = oracle["enabled"].get<bool>();
        config.oracle.start_cutoff = integer(oracle, "oracle", "start_cutoff", 16);
        config.oracle.tol = number(oracle, "oracle", "tol", 1e-8);
        config.oracle.max_cutoff = integer(oracle, "oracle", "max_cutoff", 1024);
        config.oracle.tripartite_cutoff = integer(oracle, "oracle", "tripartite_cutoff", 6);
        config.oracle.memory_budget_mb =
            static_cast<std::size_t>(integer(oracle, "oracle", "memory_budget_mb", 512));
        if (config.oracle.start_cutoff < 2 || config.oracle.max_cutoff < config.oracle.start_cutoff)
            throw ConfigError("oracle: cutoffs must satisfy 2 <= start <= max");
        if (!(config.oracle.tol > 0.0))
            throw ConfigError("oracle: tol must be positive");
    }

    if (doc.contains("tolerances")) {
        const auto& tol = doc["tolerances"];
        require_keys(tol, "tolerances",
                     {"spectrum", "ladder", "echo_oracle", "variance_oracle", "identity",
                      "critical"});
        config.tolerances.spectrum = number(tol, "tolerances", "spectrum", 1e-10);
        config.tolerances.ladder = number(tol, "tolerances", "ladder", 1e-8);
        config.tolerances.echo_oracle = number(tol, "tolerances", "echo_oracle", 1e-6);
        config.tolerances.variance_oracle = number(tol, "tolerances", "variance_oracle", 1e-6);
        config.tolerances.identity = number(tol, "tolerances", "identity", 1e-12);
        config.tolerances.critical = number(tol, "tolerances", "critical", 1e-12);
    }

    if (doc.contains("output"))
        config.output_path = doc["output"].get<std::string>();
    if (doc.contains("threads")) {
        config.threads = integer(doc, "config", "threads");
        if (config.threads < 1)
            throw ConfigError("config: threads must be >= 1");
    }

    config.config_hash = hash_config(config);
    return config;
}

RunConfig load_config_file(const std::string& path, std::optional<UnitMode> mode_override) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (mode_override)
        doc["mode"] = (*mode_override == UnitMode::SI) ? "si" : "scaled";
    return parse_config(doc);
}

nlohmann::json effective_json(const RunConfig& config) {
    nlohmann::json doc;
    doc["mode"] = config.mode == UnitMode::SI ? "si" : "scaled";
    doc["params"] = {{"omega_0", config.params.omega_0}, {"omega_c", config.params.omega_c},
                     {"omega_m", config.params.omega_m}, {"mass", config.params.mass},
                     {"eta", config.params.eta},         {"g_total", config.params.g_total},
                     {"n_atoms", config.params.n_atoms}};
    doc["branches"] = nlohmann::json::array();
    for (const auto& spec : config.branches) {
        nlohmann::json entry{{"n_a", spec.index.n_a}, {"n_b", spec.index.n_b}};
        if (spec.override_coeffs)
            entry["override"] = {{"alpha", spec.override_coeffs->alpha},
                                 {"beta", spec.override_coeffs->beta}};
        doc["branches"].push_back(entry);
    }
    doc["time_grid"] = {{"start", config.time_grid.start},
                        {"stop", config.time_grid.stop},
                        {"steps", config.time_grid.steps}};
    if (config.sweep)
        doc["sweep"] = {{"parameter", config.sweep->parameter},
                        {"start", config.sweep->start},
                        {"stop", config.sweep->stop},
                        {"points", config.sweep->points},
                        {"scale", config.sweep->log_scale ? "log" : "linear"}};
    doc["oracle"] = {{"enabled", config.oracle.enabled},
                     {"start_cutoff", config.oracle.start_cutoff},
                     {"tol", config.oracle.tol},
                     {"max_cutoff", config.oracle.max_cutoff},
                     {"tripartite_cutoff", config.oracle.tripartite_cutoff},
                     {"memory_budget_mb", config.oracle.memory_budget_mb}};
    doc["tolerances"] = {{"spectrum", config.tolerances.spectrum},
                         {"ladder", config.tolerances.ladder},
                         {"echo_oracle", config.tolerances.echo_oracle},
                         {"variance_oracle", config.tolerances.variance_oracle},
                         {"identity", config.tolerances.identity},
                         {"critical", config.tolerances.critical}};
    return doc;
}

std::uint64_t hash_config(const RunConfig& config) {
    // FNV-1a over the canonical dump; thread count and output path are
    // execution details, deliberately outside the hash.
    const std::string text = effective_json(config).dump();
    std::uint64_t hash = 1469598103934665603ull;
    for (const unsigned char byte : text) {
        hash ^= byte;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace optomech::cli
