#include "optomech/effective.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "optomech/errors.hpp"

namespace optomech {

double EffectiveCoeffs::displacement() const {
    if (regime == Regime::Critical)
        throw DegenerateFrequency("displacement: omega_m + 4 alpha vanished");
    return displacement_;
}

double EffectiveCoeffs::zeta() const {
    if (regime == Regime::Critical)
        throw DegenerateFrequency("zeta: omega_m + 4 alpha vanished");
    return zeta_;
}

void EffectiveCoeffs::finalize(double omega_m, double tol_crit) {
    stiffness_ = omega_m + 4.0 * alpha;
    pseudo_freq = std::sqrt(std::complex<double>(omega_m * stiffness_, 0.0));

    if (std::abs(stiffness_) <= tol_crit * omega_m) {
        regime = Regime::Critical;
        displacement_ = std::numeric_limits<double>::quiet_NaN();
        zeta_ = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    regime = stiffness_ > 0.0 ? Regime::Oscillatory : Regime::Hyperbolic;
    displacement_ = beta / stiffness_;

    // -(sqrt(omega_m) - sqrt(omega_m + 4a))^2 / 4 - beta^2/(omega_m + 4a) + gamma,
    // expanded as (Omega_{M,n} - omega_m - 2a)/2 so the hyperbolic continuation
    // (Re Omega_{M,n} = 0) needs no branch handling.
    zeta_ = 0.5 * (pseudo_freq.real() - omega_m - 2.0 * alpha)
            - beta * beta / stiffness_ + gamma;
}

EffectiveCoeffs EffectiveCoeffs::build(const SystemParams& params, const ModeIndex& n,
                                       double tol_crit) {
    params.validate();
    n.validate();
    const double delta = params.detuning();
    const double g2 = params.g_total * params.g_total;
    const double w = delta * delta + 4.0 * g2;
    const double sum  = n.n_b + n.n_a;
    const double diff = n.n_b - n.n_a;

    EffectiveCoeffs c;
    if (diff == 0.0 || g2 == 0.0) {
        c.alpha = 0.0;
    } else {
        if (w == 0.0)
            throw InvalidParams("effective_coeffs: zero polariton splitting");
        c.alpha = g2 * params.eta * params.eta * diff
                  / (2.0 * params.mass * params.omega_m * w * std::sqrt(w));
    }

    if (sum == 0.0 && diff == 0.0) {
        c.beta = 0.0;
    } else if (w == 0.0) {
        throw InvalidParams("effective_coeffs: zero polariton splitting");
    } else {
        c.beta = params.eta / std::sqrt(8.0 * params.mass * params.omega_m)
                 * (sum - delta * diff / std::sqrt(w));
    }

    // gamma: constant branch energy plus the quadratic-expansion constant with
    // the 3/2 exponent (the 2/3 variant is kept report-side only; it breaks
    // the eigenvalue-ladder fit).
    c.gamma = 0.5 * (params.omega_0 + params.omega_c) * sum;
    if (diff != 0.0) {
        c.gamma += 0.5 * std::sqrt(w) * diff;
        if (g2 != 0.0)
            c.gamma += g2 * params.eta * params.eta * diff
                       / (params.mass * params.omega_m * w * std::sqrt(w));
    }

    c.finalize(params.omega_m, tol_crit);
    return c;
}

EffectiveCoeffs EffectiveCoeffs::from_parts(const SystemParams& params, double alpha,
                                            double beta, double gamma, double tol_crit) {
    params.validate();
    EffectiveCoeffs c;
    c.alpha = alpha;
    c.beta = beta;
    c.gamma = gamma;
    c.finalize(params.omega_m, tol_crit);
    return c;
}

EffectiveCoeffs EffectiveCoeffs::from_overrides(const SystemParams& params, double alpha,
                                                double beta, double tol_crit) {
    return from_parts(params, alpha, beta, 0.0, tol_crit);
}

EffectiveCoeffs effective_coeffs(const SystemParams& params, const ModeIndex& n,
                                 double tol_crit) {
    return EffectiveCoeffs::build(params, n, tol_crit);
}

Regime classify_regime(const SystemParams& params, const ModeIndex& n, double tol_crit) {
    return effective_coeffs(params, n, tol_crit).regime;
}

double hyperbolic_threshold(const SystemParams& params) {
    params.validate();
    const double g2 = params.g_total * params.g_total;
    const double eta2 = params.eta * params.eta;
    if (g2 == 0.0 || eta2 == 0.0)
        return std::numeric_limits<double>::infinity();
    const double delta = params.detuning();
    const double w = delta * delta + 4.0 * g2;
    return params.mass * params.omega_m * params.omega_m * w * std::sqrt(w)
           / (2.0 * g2 * eta2);
}

BogoliubovCoeffs bogoliubov(double omega_m, const EffectiveCoeffs& coeffs) {
    const double stiffness = coeffs.stiffness();
    if (stiffness <= 0.0)
        throw HyperbolicRegime("bogoliubov: omega_m + 4 alpha <= 0, no real squeeze");
    const double ratio = omega_m / stiffness;
    const double down = std::pow(ratio, 0.25);
    const double up = std::pow(1.0 / ratio, 0.25);
    BogoliubovCoeffs b;
    b.mu = 0.5 * (down + up);
    b.nu = 0.5 * (down - up);
    b.r = std::acosh(b.mu);
    return b;
}

BogoliubovCoeffs bogoliubov(const SystemParams& params, const ModeIndex& n, double tol_crit) {
    return bogoliubov(params.omega_m, effective_coeffs(params, n, tol_crit));
}

} // namespace optomech
