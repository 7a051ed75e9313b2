#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "optomech/errors.hpp"

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "version.hpp"

namespace {

using namespace optomech;
using namespace optomech::cli;

// 0 pass, 1 validation failure, 2 config error, 3 numerical non-convergence
enum ExitCode { exit_ok = 0, exit_validation = 1, exit_config = 2, exit_numeric = 3 };

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    int threads = 0;
    bool force_scaled = false;
    bool force_si = false;
};

void attach_common(CLI::App* sub, CommonOptions& opts) {
    sub->add_option("--config", opts.config_path, "JSON run configuration")->required();
    sub->add_option("--out", opts.out_path, "output file (stdout when omitted)");
    sub->add_option("--threads", opts.threads, "worker threads for sweep rows");
    auto* scaled = sub->add_flag("--scaled", opts.force_scaled, "force scaled units");
    sub->add_flag("--si", opts.force_si, "force SI units (frequencies in Hz)")
        ->excludes(scaled);
}

RunConfig load_with_overrides(const CommonOptions& opts) {
    std::optional<UnitMode> mode;
    if (opts.force_scaled)
        mode = UnitMode::Scaled;
    if (opts.force_si)
        mode = UnitMode::SI;
    RunConfig config = load_config_file(opts.config_path, mode);
    if (opts.threads > 0)
        config.threads = opts.threads;
    if (!opts.out_path.empty())
        config.output_path = opts.out_path;
    return config;
}

int emit(const CsvSeries& series, const RunConfig& config) {
    if (config.output_path.empty())
        std::cout << to_text(series);
    else
        write_csv(series, config.output_path);
    return exit_ok;
}

int dispatch(const std::string& name, const CommonOptions& opts, bool gamma_details) {
    const RunConfig config = load_with_overrides(opts);
    if (name == "spectrum")
        return emit(run_spectrum(config), config);
    if (name == "echo")
        return emit(run_echo(config), config);
    if (name == "fidelity")
        return emit(run_fidelity(config), config);
    if (name == "variance")
        return emit(run_variance(config), config);
    if (name == "regime-map")
        return emit(run_regime_map(config), config);
    if (name == "validate") {
        const auto report = run_validate(config, gamma_details);
        const std::string text = report.to_text();
        std::cout << text;
        if (!config.output_path.empty())
            write_text_file(text, config.output_path);
        return report.passed ? exit_ok : exit_validation;
    }
    throw ConfigError("unknown subcommand: " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"atom-assisted cavity optomechanics: spectra, echo, fidelity, variance, "
                 "regime maps and the Fock-oracle validation report"};
    app.set_version_flag("--version", OPTOMECH_VERSION);
    app.require_subcommand(1);

    CommonOptions opts;
    bool gamma_details = false;

    for (const char* name : {"spectrum", "echo", "fidelity", "variance", "regime-map"}) {
        auto* sub = app.add_subcommand(name);
        attach_common(sub, opts);
    }
    auto* validate = app.add_subcommand("validate", "run the oracle suite and the "
                                                    "printed-formula adjudication report");
    attach_common(validate, opts);
    validate->add_flag("--gamma-exponent-details", gamma_details,
                       "report gamma under both exponent readings");

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return dispatch(name, opts, gamma_details);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return exit_numeric;
    } catch (const CutoffTooSmall& e) {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return exit_numeric;
    } catch (const MemoryBudgetExceeded& e) {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return exit_numeric;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
}
