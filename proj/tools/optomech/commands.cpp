#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <sstream>

#include "optomech/dynamics.hpp"
#include "optomech/errors.hpp"
#include "optomech/fock.hpp"
#include "optomech/polariton.hpp"

#include "sweep.hpp"
#include "version.hpp"

namespace optomech::cli {

namespace {

std::string hash_string(std::uint64_t hash) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

std::vector<std::string> base_metadata(const RunConfig& config, const std::string& subcommand) {
    return {
        "tool=optomech " OPTOMECH_VERSION,
        "subcommand=" + subcommand,
        "config_hash=" + hash_string(config.config_hash),
        std::string("frequency_unit=") + (config.mode == UnitMode::SI ? "Hz" : "rad/s (scaled)"),
    };
}

EffectiveCoeffs branch_coeffs(const SystemParams& params, const BranchSpec& spec,
                              double tol_crit) {
    if (spec.override_coeffs)
        return EffectiveCoeffs::from_overrides(params, spec.override_coeffs->alpha,
                                               spec.override_coeffs->beta, tol_crit);
    return effective_coeffs(params, spec.index, tol_crit);
}

SystemParams apply_sweep(const SystemParams& base, const Sweep& sweep, double input_value,
                         double frequency_scale) {
    SystemParams p = base;
    const double scaled = input_value * frequency_scale;
    if (sweep.parameter == "omega_m")
        p.omega_m = scaled;
    else if (sweep.parameter == "omega_0")
        p.omega_0 = scaled;
    else if (sweep.parameter == "omega_c")
        p.omega_c = scaled;
    else if (sweep.parameter == "eta")
        p.eta = scaled;
    else if (sweep.parameter == "g_total")
        p.g_total = scaled;
    else if (sweep.parameter == "mass")
        p.mass = input_value;
    return p;
}

double grid_time(const TimeGrid& grid, int i) {
    return grid.start + (grid.stop - grid.start) * i / (grid.steps - 1);
}

void require_branch_count(const RunConfig& config, std::size_t count, const char* subcommand) {
    if (config.branches.size() != count)
        throw ConfigError(std::string(subcommand) + ": expected "
                          + std::to_string(count) + " branch(es), got "
                          + std::to_string(config.branches.size()));
}

void require_noncritical_config(const EffectiveCoeffs& coeffs, const char* what) {
    if (coeffs.regime == Regime::Critical)
        throw ConfigError(std::string(what) + ": branch sits at the critical point");
}

} // namespace

// --------------------------------- spectrum ----------------------------------

CsvSeries run_spectrum(const RunConfig& config) {
    if (!config.sweep || config.sweep->parameter != "x")
        throw ConfigError("spectrum: requires a sweep over 'x'");
    const Sweep& sweep = *config.sweep;

    CsvSeries series;
    series.metadata = base_metadata(config, "spectrum");
    series.columns = {"x", "omega_a", "omega_b", "theta"};
    series.rows = run_rows(static_cast<std::size_t>(sweep.points), config.threads,
                           [&](std::size_t i) {
        const double x = sweep.value_at(static_cast<int>(i));
        const auto basis = polariton_frequencies(config.params, x);
        return std::vector<std::string>{
            format_double(x),
            format_double(basis.omega_a / config.frequency_scale),
            format_double(basis.omega_b / config.frequency_scale),
            format_double(basis.theta),
        };
    });
    return series;
}

// ----------------------------------- echo ------------------------------------

CsvSeries run_echo(const RunConfig& config) {
    require_branch_count(config, 2, "echo");
    const auto cn = branch_coeffs(config.params, config.branches[0],
                                  config.tolerances.critical);
    const auto cm = branch_coeffs(config.params, config.branches[1],
                                  config.tolerances.critical);
    require_noncritical_config(cn, "echo");
    require_noncritical_config(cm, "echo");

    CsvSeries series;
    series.metadata = base_metadata(config, "echo");
    series.columns = {"t", "L_nm", "L_nm_printed", "regime_n", "regime_m"};
    series.rows = run_rows(static_cast<std::size_t>(config.time_grid.steps), config.threads,
                           [&](std::size_t i) {
        const double t = grid_time(config.time_grid, static_cast<int>(i));
        return std::vector<std::string>{
            format_double(t),
            format_double(loschmidt_echo(cn, cm, t)),
            format_double(loschmidt_echo_printed(cn, cm, t)),
            to_string(cn.regime),
            to_string(cm.regime),
        };
    });
    return series;
}

// --------------------------------- fidelity ----------------------------------

CsvSeries run_fidelity(const RunConfig& config) {
    if (!config.sweep || config.sweep->parameter != "omega_m")
        throw ConfigError("fidelity: requires a sweep over 'omega_m'");
    require_branch_count(config, 2, "fidelity");
    const Sweep& sweep = *config.sweep;

    CsvSeries series;
    series.metadata = base_metadata(config, "fidelity");
    series.columns = {"omega_m", "F_nm"};
    if (config.oracle.enabled)
        series.columns.push_back("F_exact");

    FidelityOracleOptions oracle_options;
    oracle_options.start_cutoff = config.oracle.start_cutoff;
    oracle_options.tol = config.oracle.tol;
    oracle_options.max_cutoff = config.oracle.max_cutoff;

    series.rows = run_rows(static_cast<std::size_t>(sweep.points), config.threads,
                           [&](std::size_t i) {
        const double value = sweep.value_at(static_cast<int>(i));
        const SystemParams p = apply_sweep(config.params, sweep, value, config.frequency_scale);
        const auto cn = branch_coeffs(p, config.branches[0], config.tolerances.critical);
        const auto cm = branch_coeffs(p, config.branches[1], config.tolerances.critical);

        std::vector<std::string> row{format_double(value)};
        const bool defined =
            cn.regime == Regime::Oscillatory && cm.regime == Regime::Oscillatory;
        row.push_back(defined ? format_double(fidelity(cn, cm)) : "nan");
        if (config.oracle.enabled)
            row.push_back(defined ? format_double(fidelity_exact(p, cn, cm, oracle_options))
                                  : "nan");
        return row;
    });
    return series;
}

// --------------------------------- variance ----------------------------------

CsvSeries run_variance(const RunConfig& config) {
    require_branch_count(config, 1, "variance");
    const auto coeffs = branch_coeffs(config.params, config.branches[0],
                                      config.tolerances.critical);
    require_noncritical_config(coeffs, "variance");

    CsvSeries series;
    series.metadata = base_metadata(config, "variance");
    series.columns = {"t", "var_x", "var_x_printed"};

    std::unique_ptr<fock::HermitianEvolver> evolver;
    fock::FockSpace space{config.oracle.start_cutoff, 1};
    if (config.oracle.enabled) {
        // converge the cutoff at the end of the grid, then reuse one
        // decomposition across the whole series
        fock::ConvergenceOptions copts;
        copts.max_cutoff = config.oracle.max_cutoff;
        copts.budget_bytes = config.oracle.memory_budget_mb << 20;
        const auto at_cutoff = [&](int cutoff) {
            const fock::FockSpace s{cutoff, 1};
            const auto h = fock::build_mirror_hamiltonian(config.params, coeffs, s);
            const auto psi = fock::evolve(h, fock::vacuum(s), config.time_grid.stop);
            return fock::variance_x(psi, config.params, s);
        };
        const auto result =
            fock::converged(at_cutoff, config.oracle.start_cutoff, config.oracle.tol, copts);
        space.cutoff = result.cutoff;
        evolver = std::make_unique<fock::HermitianEvolver>(
            fock::build_mirror_hamiltonian(config.params, coeffs, space));
        series.columns.push_back("var_x_oracle");
        series.metadata.push_back("oracle_cutoff=" + std::to_string(space.cutoff));
    }

    series.rows = run_rows(static_cast<std::size_t>(config.time_grid.steps), config.threads,
                           [&](std::size_t i) {
        const double t = grid_time(config.time_grid, static_cast<int>(i));
        std::vector<std::string> row{
            format_double(t),
            format_double(quadrature_variance(config.params, coeffs, t)),
            format_double(quadrature_variance_printed(config.params, coeffs, t)),
        };
        if (evolver) {
            const auto psi = evolver->psi_at(fock::vacuum(space), t);
            if (fock::tail_population(psi, space) > 1e-8)
                throw CutoffTooSmall("variance: tail population above 1e-8 at t="
                                     + format_double(t));
            row.push_back(format_double(fock::variance_x(psi, config.params, space)));
        }
        return row;
    });
    return series;
}

// -------------------------------- regime map ---------------------------------

CsvSeries run_regime_map(const RunConfig& config) {
    if (!config.sweep)
        throw ConfigError("regime-map: requires a sweep");
    if (config.branches.empty())
        throw ConfigError("regime-map: requires at least one branch");
    const Sweep& sweep = *config.sweep;

    CsvSeries series;
    series.metadata = base_metadata(config, "regime-map");
    series.columns = {sweep.parameter, "n_a_minus_n_b_threshold"};
    for (const auto& spec : config.branches)
        series.columns.push_back("regime_" + std::to_string(spec.index.n_a) + "_"
                                 + std::to_string(spec.index.n_b));

    series.rows = run_rows(static_cast<std::size_t>(sweep.points), config.threads,
                           [&](std::size_t i) {
        const double value = sweep.value_at(static_cast<int>(i));
        const SystemParams p = apply_sweep(config.params, sweep, value, config.frequency_scale);
        std::vector<std::string> row{format_double(value),
                                     format_double(hyperbolic_threshold(p))};
        for (const auto& spec : config.branches)
            row.push_back(to_string(branch_coeffs(p, spec, config.tolerances.critical).regime));
        return row;
    });
    return series;
}

// --------------------------------- validate ----------------------------------

namespace {

struct ReportBuilder {
    std::vector<std::pair<std::string, std::string>> entries;
    bool passed{true};
    std::string failed_check;

    void value(const std::string& key, const std::string& text) {
        entries.emplace_back(key, text);
    }
    void value(const std::string& key, double x) { entries.emplace_back(key, format_double(x)); }

    void check(const std::string& name, double delta, double tol) {
        value(name + ".delta", delta);
        value(name + ".tol", tol);
        const bool ok = delta <= tol;
        value(name + ".pass", ok ? "true" : "false");
        if (!ok && passed) {
            passed = false;
            failed_check = name;
        }
    }

    void finding(const std::string& name, bool confirmed) {
        value(name, confirmed ? "true" : "false");
        if (!confirmed && passed) {
            passed = false;
            failed_check = name;
        }
    }
};

// gamma with the 2/3 exponent printed in the coefficient list (the variant
// ruled out by the eigenvalue-ladder fit)
double gamma_two_thirds(const SystemParams& p, const ModeIndex& n) {
    const double delta = p.detuning();
    const double w = delta * delta + 4.0 * p.g_total * p.g_total;
    const double sum = n.n_b + n.n_a;
    const double diff = n.n_b - n.n_a;
    double g = 0.5 * (p.omega_0 + p.omega_c) * sum;
    if (diff != 0.0) {
        g += 0.5 * std::sqrt(w) * diff;
        g += p.g_total * p.g_total * p.eta * p.eta * diff
             / (p.mass * p.omega_m * std::pow(w, 2.0 / 3.0));
    }
    return g;
}

double ladder_residual(const SystemParams& p, const EffectiveCoeffs& coeffs, int cutoff) {
    const auto h = fock::build_mirror_hamiltonian(p, coeffs, fock::FockSpace{cutoff, 1});
    Eigen::SelfAdjointEigenSolver<fock::Matrix> solver(h.entries);
    double residual = 0.0;
    for (int k = 0; k < 6; ++k) {
        const double expected = coeffs.zeta() + k * coeffs.pseudo_freq.real();
        residual = std::max(residual, std::abs(solver.eigenvalues()(k) - expected)
                                          / std::max(1.0, std::abs(expected)));
    }
    return residual;
}

} // namespace

std::string ValidateReport::to_text() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries)
        out << key << '=' << value << '\n';
    out << "result=" << (passed ? "pass" : "fail") << '\n';
    if (!passed)
        out << "failed=" << failed_check << '\n';
    return out.str();
}

ValidateReport run_validate(const RunConfig& config, bool gamma_details) {
    ReportBuilder report;
    report.value("tool", "optomech " OPTOMECH_VERSION);
    report.value("subcommand", "validate");
    report.value("config_hash", hash_string(config.config_hash));

    std::mt19937 rng(20240811);
    const auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    // --- spectrum: two-mode single-excitation eigenvalues vs closed form ----
    {
        double delta = 0.0;
        for (int i = 0; i < 200; ++i) {
            SystemParams p;
            p.omega_0 = uniform(0.5, 20.0);
            p.omega_c = uniform(0.5, 20.0);
            p.omega_m = uniform(0.5, 2.0);
            p.mass = uniform(0.5, 2.0);
            p.eta = uniform(-1.0, 1.0);
            p.g_total = uniform(0.0, 5.0);
            const double x = uniform(-2.0, 2.0);
            const auto basis = polariton_frequencies(p, x);
            const auto eig = fock::single_excitation_eigenvalues(p, x);
            delta = std::max(delta, std::abs(eig[0] - basis.omega_a)
                                        / std::max(1.0, std::abs(basis.omega_a)));
            delta = std::max(delta, std::abs(eig[1] - basis.omega_b)
                                        / std::max(1.0, std::abs(basis.omega_b)));
        }
        report.check("check.spectrum", delta, config.tolerances.spectrum);
    }

    // --- eigenvalue ladder on random oscillatory branches --------------------
    SystemParams ladder_params;
    ladder_params.omega_0 = 10.0;
    ladder_params.omega_c = 10.5;
    ladder_params.omega_m = 1.0;
    ladder_params.eta = 0.3;
    ladder_params.g_total = 3.0;
    const ModeIndex ladder_branch{0, 2};
    {
        double delta = 0.0;
        int checked = 0;
        while (checked < 10) {
            SystemParams p = ladder_params;
            p.omega_c = uniform(8.0, 12.0);
            p.eta = uniform(0.05, 0.5);
            p.g_total = uniform(1.0, 5.0);
            const ModeIndex n{static_cast<int>(uniform(0.0, 3.0)),
                              static_cast<int>(uniform(0.0, 3.0))};
            const auto coeffs = effective_coeffs(p, n);
            if (coeffs.regime != Regime::Oscillatory)
                continue;
            ++checked;
            delta = std::max(delta, ladder_residual(p, coeffs, 128));
        }
        report.check("check.ladder", delta, config.tolerances.ladder);
    }

    // --- echo vs Fock evolution ----------------------------------------------
    {
        SystemParams p;
        p.omega_0 = 8.0;
        p.omega_c = 10.0;
        p.omega_m = 1.0;
        p.eta = 0.04;
        p.g_total = 2.0;
        const ModeIndex n{0, 1};
        const ModeIndex m{1, 0};
        const fock::FockSpace space{48, 1};
        const fock::HermitianEvolver en(fock::build_mirror_hamiltonian(p, n, space));
        const fock::HermitianEvolver em(fock::build_mirror_hamiltonian(p, m, space));
        const auto vac = fock::vacuum(space);
        double delta = 0.0;
        for (int step = 0; step <= 60; ++step) {
            const double t = 20.0 * step / 60.0;
            const double oracle =
                std::abs(fock::overlap(en.psi_at(vac, t), em.psi_at(vac, t)));
            delta = std::max(delta, std::abs(loschmidt_echo(p, n, m, t) - oracle));
        }
        report.check("check.echo_oracle", delta, config.tolerances.echo_oracle);
    }

    // --- variance vs Fock evolution ------------------------------------------
    {
        SystemParams p;
        p.omega_0 = 10.0;
        p.omega_c = 10.0;
        p.omega_m = 1.0;
        p.eta = 0.8;
        p.g_total = 5.0;
        double delta = 0.0;

        const ModeIndex n{0, 1};
        const fock::FockSpace space{96, 1};
        const fock::HermitianEvolver osc(fock::build_mirror_hamiltonian(p, n, space));
        for (double t : {0.5, 1.5, 3.0, 6.0}) {
            const auto psi = osc.psi_at(fock::vacuum(space), t);
            const double oracle = fock::variance_x(psi, p, space);
            delta = std::max(delta, std::abs(quadrature_variance(p, n, t) - oracle)
                                        / std::max(1.0, std::abs(oracle)));
        }

        const auto hyper = EffectiveCoeffs::from_overrides(p, -0.5, 0.1);
        const fock::FockSpace hspace{256, 1};
        const fock::HermitianEvolver hyp(fock::build_mirror_hamiltonian(p, hyper, hspace));
        for (double t : {0.5, 1.0, 1.5}) {
            const auto psi = hyp.psi_at(fock::vacuum(hspace), t);
            const double oracle = fock::variance_x(psi, p, hspace);
            delta = std::max(delta, std::abs(quadrature_variance(p, hyper, t) - oracle)
                                        / std::abs(oracle));
        }
        report.check("check.variance_oracle", delta, config.tolerances.variance_oracle);
    }

    // --- identity suite -------------------------------------------------------
    {
        double defect = 0.0;
        for (int i = 0; i < 2000; ++i) {
            SystemParams p;
            p.omega_0 = uniform(5.0, 15.0);
            p.omega_c = uniform(5.0, 15.0);
            p.omega_m = 1.0;
            p.eta = uniform(0.0, 0.5);
            p.g_total = uniform(0.5, 5.0);
            const ModeIndex n{static_cast<int>(uniform(0.0, 3.0)),
                              static_cast<int>(uniform(0.0, 3.0))};
            const auto coeffs = effective_coeffs(p, n);
            if (coeffs.regime != Regime::Oscillatory)
                continue;
            const double t = uniform(0.0, 20.0);
            const auto bogo = bogoliubov(p.omega_m, coeffs);
            defect = std::max(defect, std::abs(bogo.mu * bogo.mu - bogo.nu * bogo.nu - 1.0));
            const auto prop = heisenberg_propagator(p, coeffs, t);
            defect = std::max(defect,
                              std::abs(std::norm(prop.u) - std::norm(prop.v) - 1.0));
            defect = std::max(defect, std::abs(loschmidt_echo(coeffs, coeffs, t) - 1.0));
        }
        report.check("check.identities", defect, config.tolerances.identity);
    }

    // --- adiabatic factorization on the full three-mode system ---------------
    {
        SystemParams p;
        p.omega_0 = 100.0;
        p.omega_c = 100.0;
        p.omega_m = 1.0;
        p.eta = 0.5;
        p.g_total = 25.0;   // polariton gap 50 omega_m
        const ModeIndex n{0, 1};
        const auto coeffs = effective_coeffs(p, n);
        const int k = config.oracle.tripartite_cutoff;
        const auto h3 = fock::build_tripartite_hamiltonian(p, fock::FockSpace{k, 3});
        const fock::HermitianEvolver evolver(h3);
        const auto branch = fock::polariton_state(p, 0.0, n, fock::FockSpace{k, 2});
        fock::Vector psi0 = fock::Vector::Zero(k * k * k);
        for (int i = 0; i < k * k; ++i)
            psi0(i * k) = branch(i);
        const double period = 2.0 * 3.14159265358979323846 / coeffs.pseudo_freq.real();
        double min_overlap = 1.0;
        for (int step = 0; step <= 12; ++step) {
            const double t = period * step / 12.0;
            const auto psi = evolver.psi_at(psi0, t);
            const auto mirror = fock::coherent_state(k, coherent_amplitude(coeffs, t));
            fock::Vector predicted = fock::Vector::Zero(k * k * k);
            for (int i = 0; i < k * k; ++i)
                for (int j = 0; j < k; ++j)
                    predicted(i * k + j) = branch(i) * mirror(j);
            min_overlap = std::min(min_overlap, std::abs(fock::overlap(psi, predicted)));
        }
        report.value("check.adiabatic.min_overlap", min_overlap);
        report.value("check.adiabatic.tripartite_cutoff",
                     std::to_string(config.oracle.tripartite_cutoff));
        report.finding("check.adiabatic.pass", min_overlap > 0.99);
    }

    // --- finding (i): printed Loschmidt cross term ---------------------------
    {
        SystemParams p;
        p.omega_0 = 10.0;
        p.omega_c = 10.0;
        p.omega_m = 1.0;
        p.eta = 0.3;
        p.g_total = 5.0;
        const ModeIndex n{0, 1};
        const double printed = loschmidt_echo_printed(p, n, n, 1.7);
        const double derived = loschmidt_echo(p, n, n, 1.7);
        report.value("finding.loschmidt_cross_term.printed_L_nn", printed);
        report.value("finding.loschmidt_cross_term.derived_L_nn", derived);
        report.finding("finding.loschmidt_cross_term.printed_violates_identity",
                       printed < 1.0 - 1e-6 && derived == 1.0);
    }

    // --- finding (ii): the quadratic-term exponent, adjudicated by the
    // Taylor expansion itself. Finite differences of the exact branch
    // potential give the curvature independently of the coefficient formulas;
    // an independently quantized Hamiltonian gives the level spacing.
    {
        const SystemParams p = ladder_params;   // detuned, so W != 1 and the
        const ModeIndex n = ladder_branch;      // two exponents differ
        const double delta = p.detuning();
        const double w = delta * delta + 4.0 * p.g_total * p.g_total;
        const double diff = n.n_b - n.n_a;
        const double quad_32 = p.g_total * p.g_total * p.eta * p.eta * diff / std::pow(w, 1.5);
        const double quad_23 =
            p.g_total * p.g_total * p.eta * p.eta * diff / std::pow(w, 2.0 / 3.0);

        // Richardson-extrapolated second derivative of V_n at x = 0
        const auto second_derivative = [&](double h) {
            return (bo_potential_exact(p, n, h) - 2.0 * bo_potential_exact(p, n, 0.0)
                    + bo_potential_exact(p, n, -h))
                   / (h * h);
        };
        const double fd = (4.0 * second_derivative(5e-3) - second_derivative(1e-2)) / 3.0;
        const double curvature_fd = 0.5 * fd;   // coefficient of x^2
        const double res32 = std::abs(quad_32 - curvature_fd) / std::abs(curvature_fd);
        const double res23 = std::abs(quad_23 - curvature_fd) / std::abs(curvature_fd);
        report.value("finding.gamma_exponent.curvature_finite_difference", curvature_fd);
        report.value("finding.gamma_exponent.residual_three_halves", res32);
        report.value("finding.gamma_exponent.residual_two_thirds", res23);

        // ladder spacings of H = omega_m n + V_taylor(x), quantized directly
        // from finite-difference potential data, against k * pseudo-frequency
        // under each exponent reading of alpha
        const double first_derivative =
            (bo_potential_exact(p, n, 5e-3) - bo_potential_exact(p, n, -5e-3)) / 1e-2;
        const int cutoff = 128;
        const int wide = cutoff + fock::truncation_margin;
        const fock::Matrix c = fock::ladder(wide);
        const fock::Matrix x_op =
            (c + c.adjoint()) / std::sqrt(2.0 * p.mass * p.omega_m);
        fock::Matrix h_ind = p.omega_m * (c.adjoint() * c) + first_derivative * x_op
                             + curvature_fd * (x_op * x_op);
        fock::OperatorMatrix h_taylor;
        h_taylor.entries = h_ind.topLeftCorner(cutoff, cutoff);
        h_taylor.hermitian = true;
        Eigen::SelfAdjointEigenSolver<fock::Matrix> solver(h_taylor.entries);

        const auto spacing_residual = [&](double alpha_variant) {
            const std::complex<double> pf = std::sqrt(
                std::complex<double>(p.omega_m * (p.omega_m + 4.0 * alpha_variant), 0.0));
            double worst = 0.0;
            for (int k = 1; k <= 5; ++k) {
                const double spacing = solver.eigenvalues()(k) - solver.eigenvalues()(0);
                worst = std::max(worst,
                                 std::abs(spacing - k * pf.real()) / (k * pf.real()));
            }
            return worst;
        };
        const double alpha_32 = quad_32 / (2.0 * p.mass * p.omega_m);
        const double alpha_23 = quad_23 / (2.0 * p.mass * p.omega_m);
        const double spacing_32 = spacing_residual(alpha_32);
        const double spacing_23 = spacing_residual(alpha_23);
        report.value("finding.gamma_exponent.ladder_spacing_residual_three_halves", spacing_32);
        report.value("finding.gamma_exponent.ladder_spacing_residual_two_thirds", spacing_23);
        if (gamma_details) {
            report.value("finding.gamma_exponent.gamma_three_halves",
                         effective_coeffs(p, n).gamma);
            report.value("finding.gamma_exponent.gamma_two_thirds", gamma_two_thirds(p, n));
        }
        report.finding("finding.gamma_exponent.three_halves_consistent",
                       res32 < 1e-6 && res23 > 1e3 * res32 && spacing_32 < 1e-6
                           && spacing_23 > 1e3 * spacing_32);
    }

    // --- finding (iii): printed variance prefactor ----------------------------
    {
        SystemParams p;
        p.omega_0 = 10.0;
        p.omega_c = 10.0;
        p.omega_m = 1.0;
        p.eta = 0.3;
        p.g_total = 5.0;
        const fock::FockSpace space{16, 1};
        const double vacuum_oracle = fock::variance_x(fock::vacuum(space), p, space);
        const double printed_t0 = quadrature_variance_printed(p, ModeIndex{0, 1}, 0.0);
        const double derived_t0 = quadrature_variance(p, ModeIndex{0, 1}, 0.0);
        report.value("finding.variance_prefactor.printed_t0", printed_t0);
        report.value("finding.variance_prefactor.derived_t0", derived_t0);
        report.value("finding.variance_prefactor.vacuum_oracle", vacuum_oracle);
        report.finding("finding.variance_prefactor.printed_inconsistent",
                       std::abs(derived_t0 - vacuum_oracle) < 1e-10
                           && std::abs(printed_t0 - 4.0 * vacuum_oracle) < 1e-10);
    }

    // --- finding (iv): critical condition uses omega_m, not omega_c ----------
    {
        // alpha = -1 sits between -omega_m/4 and -omega_c/4: the two rules
        // disagree, and the spectrum decides.
        SystemParams p;
        p.omega_0 = 10.0;
        p.omega_c = 10.0;
        p.omega_m = 1.0;
        p.eta = 0.3;
        p.g_total = 5.0;
        const auto coeffs = EffectiveCoeffs::from_overrides(p, -1.0, 0.1);
        const bool omega_m_rule_hyperbolic = coeffs.regime == Regime::Hyperbolic;
        const bool omega_c_rule_hyperbolic = coeffs.alpha < -p.omega_c / 4.0;
        double previous = 1e300;
        bool unbounded = true;
        for (int cutoff : {16, 32, 64, 128}) {
            const auto h = fock::build_mirror_hamiltonian(p, coeffs,
                                                          fock::FockSpace{cutoff, 1});
            Eigen::SelfAdjointEigenSolver<fock::Matrix> solver(h.entries);
            const double ground = solver.eigenvalues()(0);
            unbounded = unbounded && ground < previous - 1e-6;
            previous = ground;
        }
        report.value("finding.critical_condition.test_alpha", coeffs.alpha);
        report.value("finding.critical_condition.omega_m_rule",
                     omega_m_rule_hyperbolic ? "hyperbolic" : "oscillatory");
        report.value("finding.critical_condition.omega_c_rule",
                     omega_c_rule_hyperbolic ? "hyperbolic" : "oscillatory");
        report.value("finding.critical_condition.oracle_unbounded_below",
                     unbounded ? "true" : "false");
        report.finding("finding.critical_condition.omega_m_consistent",
                       unbounded && omega_m_rule_hyperbolic && !omega_c_rule_hyperbolic);
    }

    // --- extra: sign of the propagator's inhomogeneous term ------------------
    {
        SystemParams p;
        p.omega_0 = 10.0;
        p.omega_c = 10.0;
        p.omega_m = 1.0;
        p.eta = 0.8;
        p.g_total = 5.0;
        const ModeIndex n{0, 1};
        const auto coeffs = effective_coeffs(p, n);
        const fock::FockSpace space{96, 1};
        const fock::HermitianEvolver evolver(fock::build_mirror_hamiltonian(p, n, space));
        const double t = 3.14159265358979323846 / coeffs.pseudo_freq.real();
        const double oracle = fock::mean_x(evolver.psi_at(fock::vacuum(space), t), p, space);
        const auto prop = heisenberg_propagator(p, coeffs, t);
        const double norm_x = std::sqrt(2.0 * p.mass * p.omega_m);
        const double derived = 2.0 * prop.w.real() / norm_x;
        const double printed = -2.0 * prop.w.real() / norm_x;   // opposite real part
        report.value("finding.w_sign.derived_delta", std::abs(derived - oracle));
        report.value("finding.w_sign.printed_delta", std::abs(printed - oracle));
        report.finding("finding.w_sign.derived_consistent",
                       std::abs(derived - oracle) < 1e-6
                           && std::abs(printed - oracle) > 1e-2);
    }

    ValidateReport result;
    result.entries = std::move(report.entries);
    result.passed = report.passed;
    result.failed_check = report.failed_check;
    return result;
}

} // namespace optomech::cli
