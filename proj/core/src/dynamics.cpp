#include "optomech/dynamics.hpp"

#include <cmath>
#include <complex>

#include "optomech/errors.hpp"
#include "optomech/fock.hpp"

namespace optomech {

namespace {

constexpr Complex imag_unit{0.0, 1.0};

void require_noncritical(const EffectiveCoeffs& c) {
    if (c.regime == Regime::Critical)
        throw DegenerateFrequency("branch is at the critical point omega_m + 4 alpha = 0");
}

} // namespace

void BranchEnsemble::validate(double tol) const {
    if (entries.empty())
        throw InvalidParams("BranchEnsemble: no entries");
    double total = 0.0;
    for (const auto& [index, weight] : entries) {
        index.validate();
        total += std::norm(weight);
    }
    if (std::abs(total - 1.0) > tol)
        throw InvalidParams("BranchEnsemble: weights not normalized");
}

// ------------------------------- per-branch ----------------------------------

Complex coherent_amplitude(const EffectiveCoeffs& coeffs, double t) {
    require_noncritical(coeffs);
    return coeffs.displacement() * (std::exp(-imag_unit * coeffs.pseudo_freq * t) - 1.0);
}

Complex coherent_amplitude(const SystemParams& params, const ModeIndex& n, double t) {
    return coherent_amplitude(effective_coeffs(params, n), t);
}

MirrorState mirror_state(const SystemParams& params, const ModeIndex& n, double t) {
    const auto coeffs = effective_coeffs(params, n);
    const auto bogo = bogoliubov(params.omega_m, coeffs);
    MirrorState state;
    state.amplitude = coherent_amplitude(coeffs, t);
    state.squeeze = bogo.r * std::exp(-imag_unit * coeffs.pseudo_freq * t);
    state.frame_displacement = coeffs.displacement();
    state.branch = n;
    state.time = t;
    return state;
}

HeisenbergPropagator heisenberg_propagator(const SystemParams& params,
                                           const EffectiveCoeffs& coeffs, double t) {
    require_noncritical(coeffs);
    const Complex omega = coeffs.pseudo_freq;
    const Complex z = omega * t;
    const Complex cosz = std::cos(z);
    const Complex sin_over = std::sin(z) / omega;

    HeisenbergPropagator prop;
    prop.u = cosz - imag_unit * (params.omega_m + 2.0 * coeffs.alpha) * sin_over;
    prop.v = -imag_unit * 2.0 * coeffs.alpha * sin_over;
    // Inhomogeneous term d (u + v - 1): the motion of the vacuum mean around
    // the displaced equilibrium. Expanded, w = -2d sin^2(Omega t / 2)
    // - i (beta/Omega) sin(Omega t); the printed variant carries the
    // opposite sign on the real part and fails the equation of motion (see
    // the `validate` report).
    prop.w = coeffs.displacement() * (prop.u + prop.v - 1.0);
    prop.time = t;
    return prop;
}

HeisenbergPropagator heisenberg_propagator(const SystemParams& params, const ModeIndex& n,
                                           double t) {
    auto prop = heisenberg_propagator(params, effective_coeffs(params, n), t);
    prop.branch = n;
    return prop;
}

double quadrature_variance(const SystemParams& params, const EffectiveCoeffs& coeffs, double t) {
    const auto prop = heisenberg_propagator(params, coeffs, t);
    return std::norm(prop.u + std::conj(prop.v)) / (2.0 * params.mass * params.omega_m);
}

double quadrature_variance(const SystemParams& params, const ModeIndex& n, double t) {
    return quadrature_variance(params, effective_coeffs(params, n), t);
}

double quadrature_variance_printed(const SystemParams& params, const EffectiveCoeffs& coeffs,
                                   double t) {
    require_noncritical(coeffs);
    const double kappa = std::abs(coeffs.pseudo_freq);
    const double ch = std::cosh(kappa * t);
    const double sh = std::sinh(kappa * t);
    return 2.0 * ch * ch / (params.mass * params.omega_m)
           + 2.0 * sh * sh / (params.mass * coeffs.stiffness());
}

double quadrature_variance_printed(const SystemParams& params, const ModeIndex& n, double t) {
    return quadrature_variance_printed(params, effective_coeffs(params, n), t);
}

// ------------------------------- branch pairs --------------------------------

double loschmidt_echo(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm, double t) {
    const Complex an = coherent_amplitude(cn, t);
    const Complex am = coherent_amplitude(cm, t);
    return std::exp(-0.5 * std::norm(an - am));
}

double loschmidt_echo(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                      double t) {
    return loschmidt_echo(effective_coeffs(params, n), effective_coeffs(params, m), t);
}

Complex branch_overlap(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm, double t) {
    const Complex an = coherent_amplitude(cn, t);
    const Complex am = coherent_amplitude(cm, t);
    const double dn = cn.displacement();
    const double dm = cm.displacement();
    // Global branch phases: the dynamical zeta term plus the phase picked up
    // when the rotating frame displacement is undone. Only the real parts
    // enter, so |overlap| stays equal to the echo in every regime.
    const double phase = (cn.zeta() - cm.zeta()) * t
                         + dn * dn * std::real(std::sin(cn.pseudo_freq * t))
                         - dm * dm * std::real(std::sin(cm.pseudo_freq * t));
    const Complex coherent =
        std::exp(-0.5 * std::norm(an) - 0.5 * std::norm(am) + std::conj(an) * am);
    return std::exp(imag_unit * phase) * coherent;
}

Complex branch_overlap(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                       double t) {
    return branch_overlap(effective_coeffs(params, n), effective_coeffs(params, m), t);
}

double loschmidt_echo_printed(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm, double t) {
    require_noncritical(cn);
    require_noncritical(cm);
    const double dn = cn.displacement();
    const double dm = cm.displacement();
    const Complex half_n = 0.5 * cn.pseudo_freq * t;
    const Complex half_m = 0.5 * cm.pseudo_freq * t;
    const Complex sin2_n = std::sin(half_n) * std::sin(half_n);
    const Complex sin2_m = std::sin(half_m) * std::sin(half_m);
    const Complex diff = 0.5 * (cn.pseudo_freq - cm.pseudo_freq) * t;
    const Complex sin2_diff = std::sin(diff) * std::sin(diff);

    // Cross term with coefficient 1, as the printed variant has it. Modulus
    // of the complex continuation is returned; for two oscillatory or two
    // hyperbolic branches the exponent is real.
    const Complex exponent = -2.0 * (dn * dn * sin2_n + dm * dm * sin2_m)
                             + (sin2_n + sin2_m - sin2_diff) * dn * dm;
    return std::exp(exponent.real());
}

double loschmidt_echo_printed(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                              double t) {
    return loschmidt_echo_printed(effective_coeffs(params, n), effective_coeffs(params, m), t);
}

EchoEvaluation echo_evaluation(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                               double t) {
    const auto cn = effective_coeffs(params, n);
    const auto cm = effective_coeffs(params, m);
    EchoEvaluation eval;
    eval.value = loschmidt_echo(cn, cm, t);
    eval.omega_diff = 0.5 * (cn.pseudo_freq - cm.pseudo_freq);
    eval.branch_pair = {n, m};
    eval.time = t;
    return eval;
}

double fidelity(const EffectiveCoeffs& cn, const EffectiveCoeffs& cm) {
    if (cn.regime == Regime::Hyperbolic || cm.regime == Regime::Hyperbolic)
        throw HyperbolicRegime("fidelity: hyperbolic branch has no normalizable ground state");
    const double gap = cn.displacement() - cm.displacement();
    return std::exp(-0.5 * gap * gap);
}

double fidelity(const SystemParams& params, const ModeIndex& n, const ModeIndex& m) {
    return fidelity(effective_coeffs(params, n), effective_coeffs(params, m));
}

double fidelity_exact(const SystemParams& params, const EffectiveCoeffs& cn,
                      const EffectiveCoeffs& cm, const FidelityOracleOptions& options) {
    if (cn.regime == Regime::Hyperbolic || cm.regime == Regime::Hyperbolic)
        throw HyperbolicRegime("fidelity_exact: hyperbolic branch has no ground state");
    require_noncritical(cn);
    require_noncritical(cm);

    const auto ground_overlap = [&](int cutoff) {
        const fock::FockSpace space{cutoff, 1};
        const auto hn = fock::build_mirror_hamiltonian(params, cn, space);
        const auto hm = fock::build_mirror_hamiltonian(params, cm, space);
        Eigen::SelfAdjointEigenSolver<fock::Matrix> sn(hn.entries);
        Eigen::SelfAdjointEigenSolver<fock::Matrix> sm(hm.entries);
        return std::abs(fock::overlap(sn.eigenvectors().col(0), sm.eigenvectors().col(0)));
    };

    fock::ConvergenceOptions copts;
    copts.max_cutoff = options.max_cutoff;
    return fock::converged(ground_overlap, options.start_cutoff, options.tol, copts).value;
}

double fidelity_exact(const SystemParams& params, const ModeIndex& n, const ModeIndex& m,
                      const FidelityOracleOptions& options) {
    return fidelity_exact(params, effective_coeffs(params, n), effective_coeffs(params, m),
                          options);
}

// ------------------------------- ensembles -----------------------------------

double branch_purity(const SystemParams& params, const BranchEnsemble& ensemble, double t) {
    ensemble.validate();
    std::vector<EffectiveCoeffs> coeffs;
    coeffs.reserve(ensemble.entries.size());
    for (const auto& [index, weight] : ensemble.entries)
        coeffs.push_back(effective_coeffs(params, index));

    double purity = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const double pn = std::norm(ensemble.entries[i].second);
            const double pm = std::norm(ensemble.entries[j].second);
            const double echo = (i == j) ? 1.0 : loschmidt_echo(coeffs[i], coeffs[j], t);
            purity += pn * pm * echo * echo;
        }
    }
    return purity;
}

} // namespace optomech
